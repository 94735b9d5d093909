//! Time-domain audio and RIFF/WAVE I/O.
//!
//! Reads PCM16 and IEEE float32 files (multichannel is averaged to mono),
//! writes mono PCM16 or float32. PCM16 uses the 1/32768 scaling convention:
//! sample value 32767 decodes to 32767/32768.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::float::Float;

/// Mono audio signal with its sample rate.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform<T> {
    pub samples: Vec<T>,
    pub sample_rate: u32,
}

impl<T: Float> Waveform<T> {
    pub fn new(samples: Vec<T>, sample_rate: u32) -> Self {
        debug_assert!(sample_rate > 0);
        Self { samples, sample_rate }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_secs(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate as f64
    }

    pub fn peak(&self) -> T {
        self.samples.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn rms(&self) -> T {
        if self.samples.is_empty() {
            return T::zero();
        }
        let energy: T = self.samples.iter().map(|&x| x * x).sum();
        (energy / T::of_usize(self.samples.len())).sqrt()
    }
}

/// Output sample encoding for [`write_wav`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavEncoding {
    Pcm16,
    Float32,
}

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

/// Read a RIFF/WAVE file into a mono waveform.
///
/// PCM16 samples are scaled by 1/32768; float32 samples are clamped to
/// [-1, 1]. Multichannel input is averaged to mono.
pub fn read_wav<T: Float>(path: impl AsRef<Path>) -> Result<Waveform<T>> {
    let path = path.as_ref();
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::MissingFile(path.to_path_buf()))
        }
        Err(e) => return Err(Error::Io { path: path.to_path_buf(), source: e }),
    };
    parse_wav(&bytes)
}

fn parse_wav<T: Float>(bytes: &[u8]) -> Result<Waveform<T>> {
    let bad = |msg: &str| Error::MalformedWav(msg.to_string());
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(bad("missing RIFF/WAVE header"));
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // (format, channels, rate, bits)
    let mut data: Option<&[u8]> = None;
    let mut pos = 12usize;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let body_end = body_start.checked_add(size).ok_or_else(|| bad("chunk size overflow"))?;
        if body_end > bytes.len() {
            return Err(bad("truncated chunk"));
        }
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(bad("fmt chunk too small"));
                }
                let mut format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                if format == FORMAT_EXTENSIBLE {
                    // SubFormat GUID starts at offset 24; first two bytes carry the tag.
                    if size < 40 {
                        return Err(bad("extensible fmt chunk too small"));
                    }
                    format = u16::from_le_bytes(body[24..26].try_into().unwrap());
                }
                if channels == 0 {
                    return Err(bad("zero channels"));
                }
                if rate == 0 {
                    return Err(bad("zero sample rate"));
                }
                fmt = Some((format, channels, rate, bits));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        // Chunks are word-aligned: odd sizes carry a pad byte.
        pos = body_end + (size & 1);
    }

    let (format, channels, rate, bits) = fmt.ok_or_else(|| bad("missing fmt chunk"))?;
    let data = data.ok_or_else(|| bad("missing data chunk"))?;
    let channels = channels as usize;

    let interleaved: Vec<T> = match (format, bits) {
        (FORMAT_PCM, 16) => {
            if data.len() % 2 != 0 {
                return Err(bad("PCM16 data size not a multiple of 2"));
            }
            data.chunks_exact(2)
                .map(|c| T::of(i16::from_le_bytes([c[0], c[1]]) as f64 / 32768.0))
                .collect()
        }
        (FORMAT_IEEE_FLOAT, 32) => {
            if data.len() % 4 != 0 {
                return Err(bad("float32 data size not a multiple of 4"));
            }
            data.chunks_exact(4)
                .map(|c| {
                    let v = f32::from_le_bytes([c[0], c[1], c[2], c[3]]);
                    T::of(v.clamp(-1.0, 1.0) as f64)
                })
                .collect()
        }
        (format_tag, bits_per_sample) => {
            return Err(Error::UnsupportedWavEncoding { format_tag, bits_per_sample })
        }
    };

    if interleaved.len() % channels != 0 {
        return Err(bad("data size not a multiple of the channel count"));
    }
    let samples = if channels == 1 {
        interleaved
    } else {
        let inv = T::of_usize(channels).recip();
        interleaved
            .chunks_exact(channels)
            .map(|frame| frame.iter().copied().sum::<T>() * inv)
            .collect()
    };

    Ok(Waveform { samples, sample_rate: rate })
}

/// Write a mono waveform to a RIFF/WAVE file.
pub fn write_wav<T: Float>(
    path: impl AsRef<Path>,
    waveform: &Waveform<T>,
    encoding: WavEncoding,
) -> Result<()> {
    let path = path.as_ref();
    let (format, bits): (u16, u16) = match encoding {
        WavEncoding::Pcm16 => (FORMAT_PCM, 16),
        WavEncoding::Float32 => (FORMAT_IEEE_FLOAT, 32),
    };
    let bytes_per_sample = (bits / 8) as u32;
    let data_size = waveform.samples.len() as u32 * bytes_per_sample;
    let rate = waveform.sample_rate;

    let mut out = Vec::with_capacity(44 + data_size as usize);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_size).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&format.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&rate.to_le_bytes());
    out.extend_from_slice(&(rate * bytes_per_sample).to_le_bytes());
    out.extend_from_slice(&(bytes_per_sample as u16).to_le_bytes());
    out.extend_from_slice(&bits.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_size.to_le_bytes());

    match encoding {
        WavEncoding::Pcm16 => {
            for &x in &waveform.samples {
                let v = (x.as_f64().clamp(-1.0, 1.0) * 32768.0).round();
                let q = v.clamp(i16::MIN as f64, i16::MAX as f64) as i16;
                out.extend_from_slice(&q.to_le_bytes());
            }
        }
        WavEncoding::Float32 => {
            for &x in &waveform.samples {
                out.extend_from_slice(&x.as_f32().to_le_bytes());
            }
        }
    }

    let mut file = fs::File::create(path)
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    file.write_all(&out)
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn tmp(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("revoice-wav-tests");
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn missing_file_is_distinct_error() {
        let err = read_wav::<f64>("/nonexistent/nothing.wav").unwrap_err();
        assert!(matches!(err, Error::MissingFile(_)));
    }

    #[test]
    fn malformed_header_rejected() {
        let p = tmp("garbage.wav");
        fs::write(&p, b"not a wav file at all").unwrap();
        let err = read_wav::<f64>(&p).unwrap_err();
        assert!(matches!(err, Error::MalformedWav(_)));
    }

    #[test]
    fn unsupported_encoding_rejected() {
        // 8-bit PCM header
        let mut bytes = Vec::new();
        bytes.extend_from_slice(b"RIFF");
        bytes.extend_from_slice(&(36u32).to_le_bytes());
        bytes.extend_from_slice(b"WAVE");
        bytes.extend_from_slice(b"fmt ");
        bytes.extend_from_slice(&16u32.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&16000u32.to_le_bytes());
        bytes.extend_from_slice(&16000u32.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&8u16.to_le_bytes());
        bytes.extend_from_slice(b"data");
        bytes.extend_from_slice(&0u32.to_le_bytes());
        let p = tmp("pcm8.wav");
        fs::write(&p, &bytes).unwrap();
        let err = read_wav::<f64>(&p).unwrap_err();
        assert!(matches!(err, Error::UnsupportedWavEncoding { format_tag: 1, bits_per_sample: 8 }));
    }

    #[test]
    fn one_second_of_pcm16_zeros() {
        let p = tmp("zeros.wav");
        let w = Waveform::new(vec![0.0f64; 16000], 16000);
        write_wav(&p, &w, WavEncoding::Pcm16).unwrap();
        let back: Waveform<f64> = read_wav(&p).unwrap();
        assert_eq!(back.sample_rate, 16000);
        assert_eq!(back.samples, vec![0.0f64; 16000]);
    }

    #[test]
    fn pcm16_full_scale_value_scaling() {
        // Hand-built PCM16 file holding the single sample 32767.
        let mut bytes = Vec::new();
        bytes.extend_from_slice(b"RIFF");
        bytes.extend_from_slice(&(36u32 + 2).to_le_bytes());
        bytes.extend_from_slice(b"WAVE");
        bytes.extend_from_slice(b"fmt ");
        bytes.extend_from_slice(&16u32.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&16000u32.to_le_bytes());
        bytes.extend_from_slice(&32000u32.to_le_bytes());
        bytes.extend_from_slice(&2u16.to_le_bytes());
        bytes.extend_from_slice(&16u16.to_le_bytes());
        bytes.extend_from_slice(b"data");
        bytes.extend_from_slice(&2u32.to_le_bytes());
        bytes.extend_from_slice(&32767i16.to_le_bytes());
        let p = tmp("fullscale.wav");
        fs::write(&p, &bytes).unwrap();
        let w: Waveform<f64> = read_wav(&p).unwrap();
        assert_eq!(w.samples.len(), 1);
        assert_eq!(w.samples[0], 32767.0 / 32768.0);
    }

    #[test]
    fn float32_identity() {
        let p = tmp("float32.wav");
        let w = Waveform::new(vec![0.5f64, -0.5], 16000);
        write_wav(&p, &w, WavEncoding::Float32).unwrap();
        let back: Waveform<f64> = read_wav(&p).unwrap();
        assert_eq!(back.samples, vec![0.5, -0.5]);
    }

    #[test]
    fn float32_roundtrip_bit_identical() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let samples: Vec<f32> = (0..4096).map(|_| rng.random_range(-1.0f32..1.0)).collect();
        let w = Waveform::new(samples.clone(), 22050);
        let p = tmp("roundtrip_f32.wav");
        write_wav(&p, &w, WavEncoding::Float32).unwrap();
        let back: Waveform<f32> = read_wav(&p).unwrap();
        assert_eq!(back.samples, samples);
        assert_eq!(back.sample_rate, 22050);
    }

    #[test]
    fn pcm16_roundtrip_quantization_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<f64> = (0..4096).map(|_| rng.random_range(-1.0..1.0)).collect();
        let w = Waveform::new(samples.clone(), 16000);
        let p = tmp("roundtrip_pcm16.wav");
        write_wav(&p, &w, WavEncoding::Pcm16).unwrap();
        let back: Waveform<f64> = read_wav(&p).unwrap();
        let max_err = samples
            .iter()
            .zip(&back.samples)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(max_err <= 1.0 / 32768.0, "max_err = {max_err}");
    }

    #[test]
    fn empty_waveform_roundtrip() {
        let p = tmp("empty.wav");
        let w = Waveform::<f64>::new(vec![], 16000);
        write_wav(&p, &w, WavEncoding::Pcm16).unwrap();
        let back: Waveform<f64> = read_wav(&p).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn stereo_averaged_to_mono() {
        // Two channels: [1.0, 0.0] -> mono 0.5
        let mut bytes = Vec::new();
        bytes.extend_from_slice(b"RIFF");
        bytes.extend_from_slice(&(36u32 + 8).to_le_bytes());
        bytes.extend_from_slice(b"WAVE");
        bytes.extend_from_slice(b"fmt ");
        bytes.extend_from_slice(&16u32.to_le_bytes());
        bytes.extend_from_slice(&3u16.to_le_bytes());
        bytes.extend_from_slice(&2u16.to_le_bytes());
        bytes.extend_from_slice(&16000u32.to_le_bytes());
        bytes.extend_from_slice(&(16000u32 * 8).to_le_bytes());
        bytes.extend_from_slice(&8u16.to_le_bytes());
        bytes.extend_from_slice(&32u16.to_le_bytes());
        bytes.extend_from_slice(b"data");
        bytes.extend_from_slice(&8u32.to_le_bytes());
        bytes.extend_from_slice(&1.0f32.to_le_bytes());
        bytes.extend_from_slice(&0.0f32.to_le_bytes());
        let p = tmp("stereo.wav");
        fs::write(&p, &bytes).unwrap();
        let w: Waveform<f64> = read_wav(&p).unwrap();
        assert_eq!(w.samples, vec![0.5]);
    }
}
