//! Short-time Fourier transform and its least-squares inverse.
//!
//! Framing is explicit: `frames = (len - frame_length) / hop + 1`, no
//! implicit padding. The inverse divides the overlap-added windowed frames
//! by the summed squared window, which reconstructs the interior exactly
//! for COLA-satisfying configurations.

use ndarray::Array2;
use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::float::Float;

use super::wav::Waveform;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Hann,
    Rectangular,
}

/// Analysis framing parameters shared by STFT-based operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameConfig {
    pub frame_length: usize,
    pub hop: usize,
    pub window: WindowKind,
    pub fft_size: usize,
}

impl FrameConfig {
    pub fn new(frame_length: usize, hop: usize, window: WindowKind, fft_size: usize) -> Result<Self> {
        let cfg = Self { frame_length, hop, window, fft_size };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.hop == 0 || self.hop > self.frame_length || self.frame_length > self.fft_size {
            return Err(Error::InvalidConfig(format!(
                "need 0 < hop <= frame_length <= fft_size, got hop={}, frame_length={}, fft_size={}",
                self.hop, self.frame_length, self.fft_size
            )));
        }
        Ok(())
    }

    pub fn bins(&self) -> usize {
        self.fft_size / 2 + 1
    }

    /// Frame count for a signal of `len` samples; `None` if too short.
    pub fn num_frames(&self, len: usize) -> Option<usize> {
        if len < self.frame_length {
            None
        } else {
            Some((len - self.frame_length) / self.hop + 1)
        }
    }

    /// Whether the window/hop pair supports exact overlap-add reconstruction.
    ///
    /// Periodic Hann sums to a constant whenever the hop divides the frame
    /// with at least 2x overlap; a rectangular window requires exact tiling.
    pub fn satisfies_cola(&self) -> bool {
        match self.window {
            WindowKind::Hann => {
                self.frame_length % self.hop == 0 && self.frame_length / self.hop >= 2
            }
            WindowKind::Rectangular => self.hop == self.frame_length,
        }
    }

    /// Window samples (periodic Hann or all-ones).
    pub fn window_samples<T: Float>(&self) -> Vec<T> {
        let n = self.frame_length;
        match self.window {
            WindowKind::Rectangular => vec![T::one(); n],
            WindowKind::Hann => {
                let half = T::of(0.5);
                (0..n)
                    .map(|i| {
                        let phase = T::of(2.0) * T::PI * T::of_usize(i) / T::of_usize(n);
                        half - half * phase.cos()
                    })
                    .collect()
            }
        }
    }
}

/// Complex half-spectrum sequence: `frames x (fft_size/2 + 1)`.
#[derive(Debug, Clone)]
pub struct ComplexSpectrogram<T> {
    pub data: Array2<Complex<T>>,
    pub config: FrameConfig,
    pub sample_rate: u32,
}

impl<T: Float> ComplexSpectrogram<T> {
    pub fn frames(&self) -> usize {
        self.data.nrows()
    }

    pub fn bins(&self) -> usize {
        self.data.ncols()
    }

    pub fn magnitude(&self) -> Array2<T> {
        self.data.mapv(|c| c.norm())
    }
}

/// Forward STFT. Errors if the waveform is shorter than one frame.
pub fn stft<T: Float>(waveform: &Waveform<T>, config: &FrameConfig) -> Result<ComplexSpectrogram<T>> {
    config.validate()?;
    let frames = config.num_frames(waveform.len()).ok_or(Error::ShortInput {
        got: waveform.len(),
        need: config.frame_length,
    })?;

    let window: Vec<T> = config.window_samples();
    let bins = config.bins();
    let fft = FftPlanner::<T>::new().plan_fft_forward(config.fft_size);

    let mut out = Array2::from_elem((frames, bins), Complex::new(T::zero(), T::zero()));
    let mut buf = vec![Complex::new(T::zero(), T::zero()); config.fft_size];
    for m in 0..frames {
        let start = m * config.hop;
        for i in 0..config.fft_size {
            let v = if i < config.frame_length {
                waveform.samples[start + i] * window[i]
            } else {
                T::zero()
            };
            buf[i] = Complex::new(v, T::zero());
        }
        fft.process(&mut buf);
        for (b, item) in buf.iter().take(bins).enumerate() {
            out[(m, b)] = *item;
        }
    }

    Ok(ComplexSpectrogram { data: out, config: *config, sample_rate: waveform.sample_rate })
}

/// Least-squares inverse STFT.
///
/// Output length is `(frames - 1) * hop + frame_length`. Errors on non-COLA
/// configurations rather than silently distorting.
pub fn istft<T: Float>(spectrogram: &ComplexSpectrogram<T>) -> Result<Waveform<T>> {
    let config = &spectrogram.config;
    config.validate()?;
    if !config.satisfies_cola() {
        return Err(Error::ColaViolation(format!(
            "{:?} window with hop {} over frame {}",
            config.window, config.hop, config.frame_length
        )));
    }
    if spectrogram.bins() != config.bins() {
        return Err(Error::ShapeMismatch(format!(
            "spectrogram has {} bins, config expects {}",
            spectrogram.bins(),
            config.bins()
        )));
    }

    let frames = spectrogram.frames();
    if frames == 0 {
        return Ok(Waveform::new(vec![], spectrogram.sample_rate));
    }
    let n = config.frame_length;
    let out_len = (frames - 1) * config.hop + n;
    let window: Vec<T> = config.window_samples();

    let ifft = FftPlanner::<T>::new().plan_fft_inverse(config.fft_size);
    let scale = T::of_usize(config.fft_size).recip();

    let mut acc = vec![T::zero(); out_len];
    let mut den = vec![T::zero(); out_len];
    let mut buf = vec![Complex::new(T::zero(), T::zero()); config.fft_size];
    for m in 0..frames {
        // Rebuild the full spectrum by conjugate symmetry.
        for b in 0..config.bins() {
            buf[b] = spectrogram.data[(m, b)];
        }
        for b in config.bins()..config.fft_size {
            buf[b] = spectrogram.data[(m, config.fft_size - b)].conj();
        }
        ifft.process(&mut buf);
        let start = m * config.hop;
        for i in 0..n {
            let sample = buf[i].re * scale;
            acc[start + i] += window[i] * sample;
            den[start + i] += window[i] * window[i];
        }
    }

    let eps = T::of(1e-12);
    let samples = acc
        .iter()
        .zip(&den)
        .map(|(&a, &d)| if d > eps { a / d } else { T::zero() })
        .collect();
    Ok(Waveform::new(samples, spectrogram.sample_rate))
}
