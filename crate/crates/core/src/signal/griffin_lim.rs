//! Griffin-Lim phase reconstruction from a magnitude spectrogram.

use ndarray::Array2;
use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::float::Float;

use super::stft::{istft, stft, ComplexSpectrogram, FrameConfig};
use super::wav::Waveform;

/// Reconstruct a waveform whose STFT magnitude approximates `magnitude`.
///
/// The initial phase is seeded-uniform in [-pi, pi); each iteration projects
/// onto the set of consistent spectrograms and re-imposes the magnitudes.
/// With `iterations == 0` the output is the inverse of the magnitude with
/// the initial random phase.
pub fn griffin_lim<T: Float>(
    magnitude: &Array2<T>,
    config: &FrameConfig,
    sample_rate: u32,
    iterations: usize,
    seed: u64,
) -> Result<Waveform<T>> {
    config.validate()?;
    for ((m, b), &v) in magnitude.indexed_iter() {
        if v < T::zero() {
            return Err(Error::NegativeMagnitude { frame: m, bin: b });
        }
    }
    if magnitude.ncols() != config.bins() {
        return Err(Error::ShapeMismatch(format!(
            "magnitude has {} bins, config expects {}",
            magnitude.ncols(),
            config.bins()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut estimate = magnitude.mapv(|_| Complex::new(T::zero(), T::zero()));
    for (slot, &mag) in estimate.iter_mut().zip(magnitude.iter()) {
        let phase = T::of((rng.random::<f64>() * 2.0 - 1.0) * std::f64::consts::PI);
        *slot = Complex::from_polar(mag, phase);
    }

    let mut spec = ComplexSpectrogram { data: estimate, config: *config, sample_rate };
    for _ in 0..iterations {
        let x = istft(&spec)?;
        let rebuilt = stft(&x, config)?;
        for (slot, (&mag, &c)) in spec
            .data
            .iter_mut()
            .zip(magnitude.iter().zip(rebuilt.data.iter()))
        {
            let norm = c.norm();
            *slot = if norm > T::zero() {
                c * (mag / norm)
            } else {
                Complex::new(mag, T::zero())
            };
        }
    }
    istft(&spec)
}

/// Relative spectral distance `||STFT(x)| - M||_F / ||M||_F`.
pub fn spectral_convergence<T: Float>(
    waveform: &Waveform<T>,
    magnitude: &Array2<T>,
    config: &FrameConfig,
) -> Result<T> {
    let got = stft(waveform, config)?.magnitude();
    let frames = got.nrows().min(magnitude.nrows());
    let mut num = T::zero();
    let mut den = T::zero();
    for m in 0..frames {
        for b in 0..magnitude.ncols() {
            let d = got[(m, b)] - magnitude[(m, b)];
            num += d * d;
            den += magnitude[(m, b)] * magnitude[(m, b)];
        }
    }
    if den == T::zero() {
        return Ok(T::zero());
    }
    Ok((num / den).sqrt())
}
