//! Mel filterbank and mel spectrogram.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::float::Float;

use super::stft::{stft, FrameConfig};
use super::wav::Waveform;

/// Floor added before the log so that silence maps to a fixed constant.
pub const LOG_MEL_FLOOR: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelConfig {
    pub n_mels: usize,
    pub fmin: f64,
    pub fmax: f64,
}

impl MelConfig {
    pub fn new(n_mels: usize, fmin: f64, fmax: f64) -> Self {
        Self { n_mels, fmin, fmax }
    }

    pub fn validate(&self, sample_rate: u32) -> Result<()> {
        if self.n_mels == 0 {
            return Err(Error::InvalidConfig("n_mels must be positive".into()));
        }
        if !(self.fmin >= 0.0 && self.fmin < self.fmax && self.fmax <= sample_rate as f64 / 2.0) {
            return Err(Error::InvalidBand(format!(
                "need 0 <= fmin < fmax <= sample_rate/2, got fmin={}, fmax={}, sr={}",
                self.fmin, self.fmax, sample_rate
            )));
        }
        Ok(())
    }
}

/// Mel-domain feature sequence: `frames x n_mels`.
#[derive(Debug, Clone)]
pub struct MelSpectrogram<T> {
    pub data: Array2<T>,
    pub frame_rate: f64,
    pub config: MelConfig,
    pub log: bool,
}

impl<T: Float> MelSpectrogram<T> {
    pub fn frames(&self) -> usize {
        self.data.nrows()
    }

    pub fn n_mels(&self) -> usize {
        self.data.ncols()
    }
}

pub fn hz_to_mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

pub fn mel_to_hz(m: f64) -> f64 {
    700.0 * (10f64.powf(m / 2595.0) - 1.0)
}

/// Triangular mel filterbank, `n_mels x (fft_size/2 + 1)`.
pub fn mel_filterbank<T: Float>(
    n_mels: usize,
    fft_size: usize,
    sample_rate: u32,
    fmin: f64,
    fmax: f64,
) -> Result<Array2<T>> {
    MelConfig::new(n_mels, fmin, fmax).validate(sample_rate)?;
    let bins = fft_size / 2 + 1;

    let mel_lo = hz_to_mel(fmin);
    let mel_hi = hz_to_mel(fmax);
    // n_mels + 2 edges: each filter spans [edge[i], edge[i+2]] peaking at edge[i+1].
    let edges: Vec<f64> = (0..n_mels + 2)
        .map(|i| mel_to_hz(mel_lo + (mel_hi - mel_lo) * i as f64 / (n_mels + 1) as f64))
        .collect();

    let bin_hz = sample_rate as f64 / fft_size as f64;
    let mut fb = Array2::zeros((n_mels, bins));
    for m in 0..n_mels {
        let (left, center, right) = (edges[m], edges[m + 1], edges[m + 2]);
        for b in 0..bins {
            let f = b as f64 * bin_hz;
            let w = if f <= left || f >= right {
                0.0
            } else if f <= center {
                (f - left) / (center - left)
            } else {
                (right - f) / (right - center)
            };
            if w > 0.0 {
                fb[(m, b)] = T::of(w);
            }
        }
    }
    Ok(fb)
}

/// Mel spectrogram: `filterbank x |stft|`, optionally in the log domain
/// with the fixed floor `ln(x + 1e-5)`.
pub fn mel_spectrogram<T: Float>(
    waveform: &Waveform<T>,
    frame_config: &FrameConfig,
    mel_config: &MelConfig,
    log: bool,
) -> Result<MelSpectrogram<T>> {
    let fb = mel_filterbank::<T>(
        mel_config.n_mels,
        frame_config.fft_size,
        waveform.sample_rate,
        mel_config.fmin,
        mel_config.fmax,
    )?;
    let spec = stft(waveform, frame_config)?;
    let mag = spec.magnitude();
    // (frames x bins) . (bins x n_mels)
    let mut mel = mag.dot(&fb.t());
    if log {
        let floor = T::of(LOG_MEL_FLOOR);
        mel.mapv_inplace(|x| (x + floor).ln());
    }
    Ok(MelSpectrogram {
        data: mel,
        frame_rate: waveform.sample_rate as f64 / frame_config.hop as f64,
        config: *mel_config,
        log,
    })
}
