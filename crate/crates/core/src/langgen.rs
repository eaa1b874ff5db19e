//! Shell and cloud corpus synthesis over HRL bitext.

use std::fmt::Write as _;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noisers::{apply_language, sample_language, ArtificialLanguage, Dimension, NoiseDials, Randaug, RandaugDials, Resources};
use crate::seed;

pub const DEFAULT_CLOUD_RADII: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadiusSchedule {
    Shell(NoiseDials),
    Cloud { radii: usize, max: NoiseDials, langs_per_radius: usize },
}

impl RadiusSchedule {
    pub fn default_shell() -> Self {
        RadiusSchedule::Shell(NoiseDials::SHELL_DEFAULT)
    }

    pub fn default_cloud() -> Self {
        RadiusSchedule::Cloud { radii: DEFAULT_CLOUD_RADII, max: NoiseDials::CLOUD_MAX_DEFAULT, langs_per_radius: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RadiusSchedule::Shell(d) => d.validate(),
            RadiusSchedule::Cloud { radii, max, langs_per_radius } => {
                if *radii == 0 || *langs_per_radius == 0 {
                    return Err(Error::InvalidParameter("cloud needs at least one radius and one language per radius".into()));
                }
                max.validate()
            }
        }
    }
}

/// Dial vectors for each radius: the shell itself, or `max · i/K` for `i = 1..=K`.
pub fn schedule_radii(sched: &RadiusSchedule) -> Vec<NoiseDials> {
    match sched {
        RadiusSchedule::Shell(d) => vec![*d],
        RadiusSchedule::Cloud { radii, max, .. } => {
            (1..=*radii).map(|i| if i == *radii { *max } else { max.scaled(i as f64 / *radii as f64) }).collect()
        }
    }
}

/// Line-aligned (source, target) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bitext {
    pub pairs: Vec<(String, String)>,
}

impl Bitext {
    pub fn from_parallel(src: Vec<String>, tgt: Vec<String>) -> Result<Self> {
        if src.len() != tgt.len() {
            return Err(Error::LengthMismatch { left: src.len(), right: tgt.len() });
        }
        Ok(Bitext { pairs: src.into_iter().zip(tgt).collect() })
    }

    /// `src <TAB> tgt` lines.
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let pairs = text
            .lines()
            .enumerate()
            .map(|(no, line)| {
                line.split_once('\t')
                    .map(|(s, t)| (s.to_string(), t.to_string()))
                    .ok_or_else(|| Error::malformed(no + 1, "expected src<TAB>tgt"))
            })
            .collect::<Result<_>>()?;
        Ok(Bitext { pairs })
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (a, b) in &self.pairs {
            let _ = writeln!(s, "{a}\t{b}");
        }
        s
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn sources(&self) -> impl Iterator<Item = &str> {
        self.pairs.iter().map(|(s, _)| s.as_str())
    }

    pub fn targets(&self) -> impl Iterator<Item = &str> {
        self.pairs.iter().map(|(_, t)| t.as_str())
    }
}

/// Splits `n` lines into `k` contiguous chunks whose sizes differ by at most one; the first
/// `n mod k` chunks take the extra line.
pub fn chunk_bounds(n: usize, k: usize) -> Vec<Range<usize>> {
    let (base, extra) = (n / k, n % k);
    let mut start = 0;
    (0..k)
        .map(|i| {
            let len = base + usize::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chunk {
    /// 1-based radius index.
    pub radius: usize,
    pub dials: NoiseDials,
    pub lines: Range<usize>,
    pub language: ArtificialLanguage,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoisedBitext {
    pub bitext: Bitext,
    pub chunks: Vec<Chunk>,
}

impl NoisedBitext {
    /// Radius index of every output line.
    pub fn radius_per_line(&self) -> Vec<usize> {
        let mut out = vec![0; self.bitext.len()];
        for c in &self.chunks {
            out[c.lines.clone()].iter_mut().for_each(|r| *r = c.radius);
        }
        out
    }
}

fn noise_lines(bitext: &Bitext, range: Range<usize>, lang: &ArtificialLanguage, resources: &Resources) -> Vec<(String, String)> {
    bitext.pairs[range].par_iter().map(|(s, t)| (apply_language(s, lang, resources), t.clone())).collect()
}

/// One language at `dials`, applied to every source line. Targets are copied unchanged.
pub fn make_shell_corpus(bitext: &Bitext, dials: NoiseDials, resources: &Resources, seed: u64) -> Result<NoisedBitext> {
    if bitext.is_empty() {
        return Err(Error::EmptyBitext);
    }
    let language = sample_language(dials, resources, seed)?;
    let pairs = noise_lines(bitext, 0..bitext.len(), &language, resources);
    Ok(NoisedBitext { bitext: Bitext { pairs }, chunks: vec![Chunk { radius: 1, dials, lines: 0..bitext.len(), language }] })
}

/// `K` contiguous chunks, chunk `i` noised by fresh languages at radius `i`.
pub fn make_cloud_corpus(bitext: &Bitext, sched: &RadiusSchedule, resources: &Resources, seed: u64) -> Result<NoisedBitext> {
    sched.validate()?;
    let RadiusSchedule::Cloud { radii, langs_per_radius, .. } = *sched else {
        return Err(Error::InvalidParameter("cloud corpus needs a cloud schedule".into()));
    };
    if bitext.is_empty() {
        return Err(Error::EmptyBitext);
    }
    if bitext.len() < radii * langs_per_radius {
        return Err(Error::TooFewLines { lines: bitext.len(), chunks: radii * langs_per_radius });
    }
    let mut pairs = Vec::with_capacity(bitext.len());
    let mut chunks = Vec::new();
    for (i, (range, dials)) in chunk_bounds(bitext.len(), radii).into_iter().zip(schedule_radii(sched)).enumerate() {
        let radius = i + 1;
        for (j, sub) in chunk_bounds(range.len(), langs_per_radius).into_iter().enumerate() {
            let lines = range.start + sub.start..range.start + sub.end;
            let lang_seed = seed::derive(seed, &["cloud", &radius.to_string(), &j.to_string()]);
            let language = sample_language(dials, resources, lang_seed)?;
            pairs.extend(noise_lines(bitext, lines.clone(), &language, resources));
            chunks.push(Chunk { radius, dials, lines, language });
        }
    }
    Ok(NoisedBitext { bitext: Bitext { pairs }, chunks })
}

/// One shell corpus per grid value along `dim`, every other dial zero. All grid points share
/// the seed, so a larger value selects a superset of the units a smaller one selects.
pub fn run_theta_sweep(
    bitext: &Bitext,
    dim: Dimension,
    grid: &[f64],
    resources: &Resources,
    seed: u64,
) -> Result<Vec<(f64, NoisedBitext)>> {
    if dim == Dimension::ContentWord {
        return Err(Error::InvalidParameter("sweeps run over the p, m or f dials".into()));
    }
    grid.iter().map(|&v| Ok((v, make_shell_corpus(bitext, NoiseDials::only(dim, v)?, resources, seed)?))).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandaugChunk {
    pub radius: usize,
    pub dials: RandaugDials,
    pub lines: Range<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandaugBitext {
    pub bitext: Bitext,
    pub chunks: Vec<RandaugChunk>,
}

/// Random-augmentation corpus over `radii` contiguous chunks at `max · i/K`; one radius
/// gives the shell variant at `max`.
pub fn make_randaug_corpus(bitext: &Bitext, base: &Randaug, max: RandaugDials, radii: usize, seed: u64) -> Result<RandaugBitext> {
    if bitext.is_empty() {
        return Err(Error::EmptyBitext);
    }
    if radii == 0 {
        return Err(Error::InvalidParameter("randaug needs at least one radius".into()));
    }
    if bitext.len() < radii {
        return Err(Error::TooFewLines { lines: bitext.len(), chunks: radii });
    }
    let mut pairs = Vec::with_capacity(bitext.len());
    let mut chunks = Vec::new();
    for (i, lines) in chunk_bounds(bitext.len(), radii).into_iter().enumerate() {
        let radius = i + 1;
        let dials = if radius == radii { max } else { max.scaled(radius as f64 / radii as f64) };
        let noiser = base.with_dials(dials);
        let radius_tag = radius.to_string();
        pairs.par_extend(bitext.pairs[lines.clone()].par_iter().enumerate().map(|(k, (s, t))| {
            let line_tag = (lines.start + k).to_string();
            let mut rng = seed::rng_for(seed, &["randaug", &radius_tag, &line_tag]);
            (noiser.apply(s, &mut rng), t.clone())
        }));
        chunks.push(RandaugChunk { radius, dials, lines });
    }
    Ok(RandaugBitext { bitext: Bitext { pairs }, chunks })
}
