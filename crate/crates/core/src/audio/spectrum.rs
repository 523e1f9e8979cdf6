//! Per-slot spectra of synthesized buffers.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::audio::chords::Chord;
use crate::audio::scale::Scale;
use crate::audio::synth::{chord_frequencies, expected_len, SampleBuffer, SynthConfig, WindowParams};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Magnitude spectrum of the `round(h·sr)`-sample frame centred on a slot's onset.
pub fn slot_spectrum(buffer: &SampleBuffer, window: &WindowParams, slot: usize) -> (Vec<f64>, f64) {
    let sr = buffer.sample_rate as f64;
    let len = (window.hop * sr).round() as usize;
    let centre = (window.onset(slot) * sr).round() as i64;
    let start = centre - len as i64 / 2;
    let mut frame: Vec<Complex<f64>> = (0..len as i64)
        .map(|k| {
            let i = start + k;
            let s = if i >= 0 { buffer.samples.get(i as usize).copied().unwrap_or(0.0) } else { 0.0 };
            Complex::new(s, 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(len).process(&mut frame);
    let mags = frame[..len / 2 + 1].iter().map(|c| c.norm()).collect();
    (mags, sr / len as f64)
}

/// Bins of the `k` largest local maxima, ascending by bin.
pub fn top_peaks(mags: &[f64], k: usize) -> Vec<usize> {
    let mut peaks: Vec<usize> = (1..mags.len().saturating_sub(1))
        .filter(|&i| mags[i] > mags[i - 1] && mags[i] >= mags[i + 1])
        .collect();
    peaks.sort_by(|&a, &b| mags[b].total_cmp(&mags[a]).then(a.cmp(&b)));
    peaks.truncate(k);
    peaks.sort();
    peaks
}

/// Checks that each slot's largest spectral peaks sit within one bin of its chord's pitches.
pub fn spectral_report(
    buffer: &SampleBuffer,
    chords: &[Chord],
    scale: &Scale,
    window: &WindowParams,
    config: &SynthConfig,
) -> Result<VerificationReport> {
    if buffer.sample_rate != config.sample_rate {
        return Err(Error::ParameterMismatch(format!(
            "buffer at {} Hz, config at {} Hz",
            buffer.sample_rate, config.sample_rate
        )));
    }
    let expected = expected_len(chords.len(), window, config.sample_rate);
    if buffer.samples.len() != expected {
        return Err(Error::ParameterMismatch(format!(
            "{} samples, expected {expected} for {} chords",
            buffer.samples.len(),
            chords.len()
        )));
    }
    let mut cases = Vec::with_capacity(chords.len());
    for (slot, chord) in chords.iter().enumerate() {
        let mut freqs = chord_frequencies(chord, scale, config.pitch_order)?;
        freqs.sort_by(f64::total_cmp);
        freqs.dedup();
        let (mags, bin) = slot_spectrum(buffer, window, slot);
        let peaks = top_peaks(&mags, freqs.len());
        let ok = peaks.len() == freqs.len()
            && peaks.iter().zip(&freqs).all(|(&p, &f)| (p as f64 - f / bin).abs() <= 1.0);
        cases.push((ok, move || {
            let found: Vec<String> = peaks.iter().map(|&p| format!("{:.2}", p as f64 * bin)).collect();
            let want: Vec<String> = freqs.iter().map(|f| format!("{f:.2}")).collect();
            format!("slot {slot}: peaks at [{}] Hz, expected [{}] Hz (bin {bin:.3} Hz)", found.join(", "), want.join(", "))
        }));
    }
    let mut report = VerificationReport::new(format!("spectral report, {} slots", chords.len()));
    report.check("peaks within one bin of chord pitches", cases);
    Ok(report)
}

/// Times of short-time energy maxima at least half a hop apart, ignoring
/// frames under 1% of the loudest. Frames span `σ/2`.
pub fn detect_onsets(buffer: &SampleBuffer, window: &WindowParams) -> Vec<f64> {
    let sr = buffer.sample_rate as f64;
    let frame = ((window.sigma / 2.0 * sr).round() as usize).max(1);
    let energy: Vec<f64> = buffer.samples.chunks(frame).map(|c| c.iter().map(|s| s * s).sum()).collect();
    let loudest = energy.iter().copied().fold(0.0, f64::max);
    let time = |i: usize| (i as f64 + 0.5) * frame as f64 / sr;
    let mut onsets: Vec<(f64, f64)> = Vec::new();
    for i in 0..energy.len() {
        let left = if i == 0 { 0.0 } else { energy[i - 1] };
        let right = energy.get(i + 1).copied().unwrap_or(0.0);
        if !(energy[i] > left && energy[i] >= right && energy[i] >= 0.01 * loudest) {
            continue;
        }
        match onsets.last_mut() {
            Some(last) if time(i) - last.0 < window.hop / 2.0 => {
                if energy[i] > last.1 {
                    *last = (time(i), energy[i]);
                }
            }
            _ => onsets.push((time(i), energy[i])),
        }
    }
    onsets.into_iter().map(|(t, _)| t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audio::chords::{chord_sequence, ChordOrder};
    use crate::audio::synth::synthesize;
    use crate::design::Design;

    fn fano_signal() -> (Vec<Chord>, Scale, WindowParams, SynthConfig, SampleBuffer) {
        let chords = chord_sequence(&Design::from_q(&[10, 4, 11]).unwrap(), ChordOrder::Blocks).unwrap();
        let (scale, window, config) = (Scale::default_scale(), WindowParams::default(), SynthConfig::default());
        let buf = synthesize(&chords, &scale, &window, &config).unwrap();
        (chords, scale, window, config, buf)
    }

    #[test]
    fn fano_slots_pass() {
        let (chords, scale, window, config, buf) = fano_signal();
        let report = spectral_report(&buf, &chords, &scale, &window, &config).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks[0].checked, 7);
        assert_eq!(detect_onsets(&buf, &window).len(), 7);
    }

    #[test]
    fn detuned_slot_fails() {
        let (chords, scale, window, config, buf) = fano_signal();
        let mut tampered = chords.clone();
        tampered[3].notes[0] = tampered[2].notes[0];
        tampered[3].notes[1] = tampered[2].notes[1];
        tampered[3].notes[2] = tampered[2].notes[2];
        let detuned = synthesize(&tampered, &scale, &window, &config).unwrap();
        let report = spectral_report(&detuned, &chords, &scale, &window, &config).unwrap();
        let check = &report.checks[0];
        assert_eq!(check.failures, 1);
        assert!(check.counterexamples[0].starts_with("slot 3:"));
        assert!(spectral_report(&buf, &chords[..6], &scale, &window, &config).is_err());
    }

    #[test]
    fn single_note_single_peak() {
        let chord = Chord { notes: vec!["C".parse().unwrap()] };
        let (scale, window, config) = (Scale::default_scale(), WindowParams::default(), SynthConfig::default());
        let buf = synthesize(std::slice::from_ref(&chord), &scale, &window, &config).unwrap();
        let (mags, _) = slot_spectrum(&buf, &window, 0);
        let peaks = top_peaks(&mags, 2);
        let dominant = peaks.iter().map(|&p| mags[p]).fold(0.0, f64::max);
        let others = peaks.iter().filter(|&&p| mags[p] < dominant).map(|&p| mags[p]).fold(0.0, f64::max);
        assert!(others < 0.01 * dominant);
        assert!(spectral_report(&buf, &[chord], &scale, &window, &config).unwrap().passed());
    }
}
