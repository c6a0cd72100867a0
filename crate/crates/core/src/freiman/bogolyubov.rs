//! Large Fourier coefficients and the Bohr sets they define.

use num_rational::Ratio;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracles::within;

/// `Bohr_m(R, eps) = { x : ||r x / m|| <= eps for all r in R }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BohrSpec {
    pub m: u64,
    pub freqs: Vec<u64>,
    #[serde(serialize_with = "ser_ratio")]
    pub eps: Ratio<u64>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl BohrSpec {
    pub fn contains(&self, x: u64) -> bool {
        let m = self.m as u128;
        self.freqs
            .iter()
            .all(|&r| within(((r as u128 * x as u128) % m) as u64, self.m, self.eps))
    }

    pub fn dim(&self) -> usize {
        self.freqs.len()
    }
}

/// Relative band around the threshold inside which a frequency is kept.
/// Keeping a borderline frequency only shrinks the Bohr set.
const TIE_BAND: f64 = 1e-9;

/// `R = { r != 0 : |1_B^(r)| > alpha^{3/2} }` with width 1/4.
pub fn bogolyubov(b: &[u64], m: u64) -> Result<BohrSpec> {
    if b.is_empty() || m == 0 {
        return Err(Error::Empty("bogolyubov"));
    }
    let mut signal = vec![Complex::new(0.0f64, 0.0); m as usize];
    let mut size = 0u64;
    for &x in b {
        let slot = &mut signal[(x % m) as usize];
        if slot.re == 0.0 {
            size += 1;
        }
        slot.re = 1.0;
    }
    FftPlanner::new().plan_fft_forward(m as usize).process(&mut signal);
    // |S(r)|/m > (|B|/m)^{3/2}  <=>  |S(r)|^2 m > |B|^3
    let threshold = (size as f64).powi(3);
    let freqs = (1..m)
        .filter(|&r| signal[r as usize].norm_sqr() * m as f64 > threshold * (1.0 - TIE_BAND))
        .collect();
    Ok(BohrSpec { m, freqs, eps: Ratio::new(1, 4) })
}

/// Same output via an O(m·|B|) direct transform.
pub fn bogolyubov_direct(b: &[u64], m: u64) -> Result<BohrSpec> {
    if b.is_empty() || m == 0 {
        return Err(Error::Empty("bogolyubov"));
    }
    let mut uniq: Vec<u64> = b.iter().map(|x| x % m).collect();
    uniq.sort_unstable();
    uniq.dedup();
    let size = uniq.len() as f64;
    let freqs = (1..m)
        .filter(|&r| {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for &x in &uniq {
                let k = ((r as u128 * x as u128) % m as u128) as f64;
                let ang = -2.0 * std::f64::consts::PI * k / m as f64;
                re += ang.cos();
                im += ang.sin();
            }
            (re * re + im * im) * m as f64 > size.powi(3) * (1.0 - TIE_BAND)
        })
        .collect();
    Ok(BohrSpec { m, freqs, eps: Ratio::new(1, 4) })
}
