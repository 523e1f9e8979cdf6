//! Gaussian-windowed additive synthesis and WAV output.

use std::f64::consts::PI;
use std::io::{Seek, Write};
use std::path::Path;

use crate::audio::chords::Chord;
use crate::audio::notes::{scale_degree, PitchOrder};
use crate::audio::scale::Scale;
use crate::error::{Error, Result};

/// Envelope samples further than this many sigmas from an onset are skipped.
const SUPPORT_SIGMAS: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowParams {
    /// Seconds between onsets.
    pub hop: f64,
    /// Gaussian width in seconds.
    pub sigma: f64,
}

impl Default for WindowParams {
    fn default() -> Self {
        WindowParams { hop: 0.8, sigma: 0.12 }
    }
}

impl WindowParams {
    /// The envelope must fall below 1% of its peak two hops away from its onset.
    pub fn validate(&self) -> Result<()> {
        if !(self.hop.is_finite() && self.hop > 0.0) {
            return Err(Error::InvalidWindow(format!("hop {} must be positive", self.hop)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::InvalidWindow(format!("sigma {} must be positive", self.sigma)));
        }
        let residual = self.envelope(2.0 * self.hop);
        if residual >= 0.01 {
            return Err(Error::InvalidWindow(format!(
                "envelope is {:.3} of peak after two hops (h = {}, σ = {})",
                residual, self.hop, self.sigma
            )));
        }
        Ok(())
    }

    pub fn envelope(&self, dt: f64) -> f64 {
        (-dt * dt / (2.0 * self.sigma * self.sigma)).exp()
    }

    pub fn onset(&self, slot: usize) -> f64 {
        slot as f64 * self.hop + 3.0 * self.sigma
    }

    /// Audible span of one note, `±3σ` around its onset.
    pub fn note_duration(&self) -> f64 {
        6.0 * self.sigma
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthConfig {
    pub sample_rate: u32,
    pub bits_per_sample: u16,
    pub channels: u16,
    pub amplitude: f64,
    pub ceiling: f64,
    pub pitch_order: PitchOrder,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            sample_rate: 44100,
            bits_per_sample: 16,
            channels: 1,
            amplitude: 1.0 / 3.0,
            ceiling: 0.9,
            pitch_order: PitchOrder::Dictionary,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSynthConfig(m));
        if self.sample_rate == 0 {
            return bad("sample rate must be positive".into());
        }
        if !matches!(self.bits_per_sample, 16 | 24) {
            return bad(format!("{} bits per sample (16 or 24 supported)", self.bits_per_sample));
        }
        if self.channels == 0 {
            return bad("at least one channel".into());
        }
        if !(self.amplitude.is_finite() && self.amplitude > 0.0) {
            return bad(format!("note amplitude {}", self.amplitude));
        }
        if !(self.ceiling > 0.0 && self.ceiling < 1.0) {
            return bad(format!("peak ceiling {} must lie in (0, 1)", self.ceiling));
        }
        Ok(())
    }
}

/// Mono samples at full scale ±1.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleBuffer {
    pub sample_rate: u32,
    pub samples: Vec<f64>,
}

impl SampleBuffer {
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}

/// `ceil((N·h + 6σ)·sr)` samples.
pub fn expected_len(chords: usize, window: &WindowParams, sample_rate: u32) -> usize {
    let seconds = chords as f64 * window.hop + 6.0 * window.sigma;
    // Guard against representation error pushing an exact product past an integer.
    (seconds * sample_rate as f64 - 1e-9).ceil() as usize
}

pub(crate) fn chord_frequencies(chord: &Chord, scale: &Scale, order: PitchOrder) -> Result<Vec<f64>> {
    chord
        .notes
        .iter()
        .map(|&n| {
            let degree = scale_degree(n, order)?;
            if degree >= scale.len() {
                return Err(Error::ParameterMismatch(format!("scale has no degree {degree}")));
            }
            Ok(scale.frequency(degree))
        })
        .collect()
}

pub fn synthesize(chords: &[Chord], scale: &Scale, window: &WindowParams, config: &SynthConfig) -> Result<SampleBuffer> {
    if chords.is_empty() {
        return Err(Error::EmptyChordSequence);
    }
    window.validate()?;
    config.validate()?;
    let sr = config.sample_rate as f64;
    let len = expected_len(chords.len(), window, config.sample_rate);
    let mut samples = vec![0.0; len];
    let reach = SUPPORT_SIGMAS * window.sigma;
    for (n, chord) in chords.iter().enumerate() {
        let freqs = chord_frequencies(chord, scale, config.pitch_order)?;
        let onset = window.onset(n);
        let first = ((onset - reach) * sr).floor().max(0.0) as usize;
        let last = (((onset + reach) * sr).ceil() as usize).min(len);
        for (i, sample) in samples.iter_mut().enumerate().take(last).skip(first) {
            let t = i as f64 / sr;
            let env = config.amplitude * window.envelope(t - onset);
            for f in &freqs {
                *sample += env * (2.0 * PI * f * t).sin();
            }
        }
    }
    let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    if peak > config.ceiling {
        let gain = config.ceiling / peak;
        samples.iter_mut().for_each(|s| *s *= gain);
    }
    Ok(SampleBuffer { sample_rate: config.sample_rate, samples })
}

/// Linear PCM, little-endian, mono content copied to every channel.
pub fn write_wav_to<W: Write + Seek>(buffer: &SampleBuffer, config: &SynthConfig, out: W) -> Result<()> {
    config.validate()?;
    if buffer.sample_rate != config.sample_rate {
        return Err(Error::ParameterMismatch(format!(
            "buffer at {} Hz, config at {} Hz",
            buffer.sample_rate, config.sample_rate
        )));
    }
    let spec = hound::WavSpec {
        channels: config.channels,
        sample_rate: config.sample_rate,
        bits_per_sample: config.bits_per_sample,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::new(out, spec)?;
    let full = ((1i64 << (config.bits_per_sample - 1)) - 1) as f64;
    for &s in &buffer.samples {
        let q = (s.clamp(-1.0, 1.0) * full).round() as i32;
        for _ in 0..config.channels {
            writer.write_sample(q)?;
        }
    }
    writer.finalize()?;
    Ok(())
}

pub fn write_wav(buffer: &SampleBuffer, config: &SynthConfig, path: impl AsRef<Path>) -> Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_wav_to(buffer, config, file)
}

pub fn wav_bytes(buffer: &SampleBuffer, config: &SynthConfig) -> Result<Vec<u8>> {
    let mut cursor = std::io::Cursor::new(Vec::new());
    write_wav_to(buffer, config, &mut cursor)?;
    Ok(cursor.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::notes::NoteLabel;

    fn chord(notes: &[&str]) -> Chord {
        Chord { notes: notes.iter().map(|n| n.parse::<NoteLabel>().unwrap()).collect() }
    }

    #[test]
    fn window_validation() {
        assert!(WindowParams::default().validate().is_ok());
        assert!(WindowParams { hop: 0.1, sigma: 0.12 }.validate().is_err());
        assert!(WindowParams { hop: 0.0, sigma: 0.12 }.validate().is_err());
        assert!(WindowParams { hop: 0.8, sigma: -1.0 }.validate().is_err());
    }

    #[test]
    fn closed_form_length() {
        assert_eq!(expected_len(35, &WindowParams::default(), 44100), 1_266_552);
        let buf = synthesize(&[chord(&["B", "D", "E"])], &Scale::default_scale(), &WindowParams::default(), &SynthConfig::default()).unwrap();
        assert_eq!(buf.samples.len(), expected_len(1, &WindowParams::default(), 44100));
    }

    #[test]
    fn empty_and_bad_config() {
        let scale = Scale::default_scale();
        let w = WindowParams::default();
        assert!(matches!(synthesize(&[], &scale, &w, &SynthConfig::default()), Err(Error::EmptyChordSequence)));
        let loud = SynthConfig { ceiling: 1.0, ..SynthConfig::default() };
        assert!(synthesize(&[chord(&["A"])], &scale, &w, &loud).is_err());
    }

    #[test]
    fn energy_concentrates_around_onset() {
        let w = WindowParams::default();
        let config = SynthConfig::default();
        let buf = synthesize(&[chord(&["C", "D", "E"])], &Scale::default_scale(), &w, &config).unwrap();
        let onset = w.onset(0);
        let sr = config.sample_rate as f64;
        let (mut inside, mut total) = (0.0, 0.0);
        for (i, s) in buf.samples.iter().enumerate() {
            let e = s * s;
            total += e;
            if ((i as f64 / sr) - onset).abs() <= 3.0 * w.sigma {
                inside += e;
            }
        }
        assert!(inside / total >= 0.99);
        assert!(buf.peak() <= config.ceiling + 1e-12);
    }

    #[test]
    fn wav_header_and_determinism() {
        let config = SynthConfig::default();
        let buf = synthesize(&[chord(&["A♭", "B", "E♯"])], &Scale::default_scale(), &WindowParams::default(), &config).unwrap();
        let bytes = wav_bytes(&buf, &config).unwrap();
        assert_eq!(&bytes[0..4], b"RIFF");
        assert_eq!(&bytes[8..16], b"WAVEfmt ");
        assert_eq!(u16::from_le_bytes([bytes[20], bytes[21]]), 1);
        assert_eq!(u16::from_le_bytes([bytes[22], bytes[23]]), 1);
        assert_eq!(u32::from_le_bytes(bytes[24..28].try_into().unwrap()), 44100);
        assert_eq!(u16::from_le_bytes([bytes[34], bytes[35]]), 16);
        assert_eq!(bytes.len(), 44 + 2 * buf.samples.len());
        assert_eq!(bytes, wav_bytes(&buf, &config).unwrap());
    }
}
