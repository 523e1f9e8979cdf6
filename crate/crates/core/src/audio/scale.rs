//! Combination-product-set scales: pairwise products of six odd primes,
//! octave-reduced into `[1, 2)`.

use std::fmt::Write as _;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub const DEFAULT_PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];
pub const DEFAULT_TONIC: f64 = 440.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Scale {
    tonic: f64,
    ratios: Vec<Ratio<u64>>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Divides or multiplies by powers of two until the ratio lies in `[1, 2)`.
pub fn octave_reduce(r: Ratio<u64>) -> Ratio<u64> {
    let one = Ratio::from_integer(1);
    let two = Ratio::from_integer(2);
    let mut r = r;
    while r >= two {
        r /= 2;
    }
    while r < one {
        r *= 2;
    }
    r
}

/// CPS(6,2) over `primes`, sorted ascending.
pub fn build_cps_scale(primes: &[u64], tonic: f64) -> Result<Scale> {
    if primes.len() != 6 {
        return Err(Error::InvalidPrimes(format!("need 6 primes, got {}", primes.len())));
    }
    for (i, &p) in primes.iter().enumerate() {
        if p == 2 {
            return Err(Error::InvalidPrimes("2 is the octave and cannot be a generator".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrimes(format!("{p} is not prime")));
        }
        if primes[..i].contains(&p) {
            return Err(Error::InvalidPrimes(format!("{p} is repeated")));
        }
    }
    if !(tonic.is_finite() && tonic > 0.0) {
        return Err(Error::InvalidTonic(tonic));
    }
    let mut ratios = Vec::with_capacity(15);
    for i in 0..6 {
        for j in i + 1..6 {
            ratios.push(octave_reduce(Ratio::from_integer(primes[i] * primes[j])));
        }
    }
    ratios.sort();
    if let Some(w) = ratios.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::ScaleCollision(w[0].to_string()));
    }
    Ok(Scale { tonic, ratios })
}

impl Scale {
    pub fn default_scale() -> Scale {
        build_cps_scale(&DEFAULT_PRIMES, DEFAULT_TONIC).expect("default primes give a valid scale")
    }

    pub fn tonic(&self) -> f64 {
        self.tonic
    }

    pub fn ratios(&self) -> &[Ratio<u64>] {
        &self.ratios
    }

    pub fn len(&self) -> usize {
        self.ratios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ratios.is_empty()
    }

    pub fn frequency(&self, degree: usize) -> f64 {
        let r = self.ratios[degree];
        self.tonic * *r.numer() as f64 / *r.denom() as f64
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.len()).map(|d| self.frequency(d)).collect()
    }

    /// One line per degree: index, ratio and frequency in Hz.
    pub fn to_text(&self) -> String {
        let mut out = format!("# tonic {} Hz\n# degree  ratio  Hz\n", self.tonic);
        for (d, r) in self.ratios.iter().enumerate() {
            writeln!(out, "{d:>2}  {r:>7}  {:.4}", self.frequency(d)).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn default_ratios() {
        let s = build_cps_scale(&DEFAULT_PRIMES, 220.0).unwrap();
        assert_eq!(s.len(), 15);
        assert!(s.ratios().contains(&r(33, 32)));
        assert!(s.ratios().contains(&r(15, 8)));
        assert_eq!(s.ratios()[0], r(65, 64));
        assert_eq!(*s.ratios().last().unwrap(), r(15, 8));
        assert!(s.ratios().iter().all(|&x| x >= r(1, 1) && x < r(2, 1)));
        assert!(s.frequencies().windows(2).all(|w| w[0] < w[1]));
        assert!((s.frequency(14) - 412.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(build_cps_scale(&[3, 5, 7, 11, 13], 220.0), Err(Error::InvalidPrimes(_))));
        assert!(matches!(build_cps_scale(&[2, 5, 7, 11, 13, 17], 220.0), Err(Error::InvalidPrimes(_))));
        assert!(matches!(build_cps_scale(&[3, 5, 9, 11, 13, 17], 220.0), Err(Error::InvalidPrimes(_))));
        assert!(matches!(build_cps_scale(&[3, 3, 7, 11, 13, 17], 220.0), Err(Error::InvalidPrimes(_))));
        assert!(matches!(build_cps_scale(&DEFAULT_PRIMES, 0.0), Err(Error::InvalidTonic(_))));
        assert!(matches!(build_cps_scale(&DEFAULT_PRIMES, f64::NAN), Err(Error::InvalidTonic(_))));
    }

    #[test]
    fn other_prime_sets() {
        let s = build_cps_scale(&[5, 7, 11, 13, 17, 19], 100.0).unwrap();
        assert_eq!(s.len(), 15);
        assert_eq!(s.ratios()[0], octave_reduce(Ratio::from_integer(5 * 13)));
    }

    #[test]
    fn text_export() {
        let text = Scale::default_scale().to_text();
        assert!(text.contains("15/8"));
        assert!(text.contains("825.0000"));
        assert_eq!(text.lines().count(), 17);
    }
}
