use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::processes::{MixtureConfig, SEED_NODES};

/// Number of genes in a [`Chromosome`].
pub const GENE_COUNT: usize = 10;

/// Slack allowed above 1 for the probability sum before it is rescaled.
const SUM_SLACK: f64 = 1e-12;

/// Evolved mixture parameters: everything in [`MixtureConfig`] except the
/// target assortativity, which always comes from the target graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Chromosome {
    pub n: usize,
    pub p_pa: f64,
    pub p_tra: f64,
    pub p_ma: f64,
    pub p_adm: f64,
    pub m: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub p_rewiring: f64,
    pub p_copying: f64,
    pub n_adm: usize,
}

impl Chromosome {
    pub fn to_mixture(&self, target_assortativity: f64) -> MixtureConfig {
        MixtureConfig {
            n: self.n,
            p_pa: self.p_pa,
            p_tra: self.p_tra,
            p_ma: self.p_ma,
            p_adm: self.p_adm,
            m: self.m,
            k: self.k,
            p_rewiring: self.p_rewiring,
            p_copying: self.p_copying,
            n_adm: self.n_adm,
            target_assortativity: target_assortativity.clamp(-1.0, 1.0),
        }
    }

    pub fn probability_sum(&self) -> f64 {
        self.p_pa + self.p_tra + self.p_ma + self.p_adm
    }
}

impl From<&MixtureConfig> for Chromosome {
    fn from(c: &MixtureConfig) -> Self {
        Self {
            n: c.n,
            p_pa: c.p_pa,
            p_tra: c.p_tra,
            p_ma: c.p_ma,
            p_adm: c.p_adm,
            m: c.m,
            k: c.k,
            p_rewiring: c.p_rewiring,
            p_copying: c.p_copying,
            n_adm: c.n_adm,
        }
    }
}

/// Closed integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub min: usize,
    pub max: usize,
}

impl IntRange {
    pub fn contains(&self, v: usize) -> bool {
        (self.min..=self.max).contains(&v)
    }

    fn clamp(&self, v: usize) -> usize {
        v.clamp(self.min, self.max)
    }
}

/// Valid interval of every integer gene. Probability genes always live in
/// `[0, 1]` with the four process probabilities summing to at most 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneRanges {
    pub n: IntRange,
    pub m: IntRange,
    /// Both bounds are even.
    #[serde(rename = "K")]
    pub k: IntRange,
    pub n_adm: IntRange,
}

impl GeneRanges {
    /// Whether `c` satisfies every interval, the even-`K` rule and the
    /// probability constraints (sum within `tolerance` of the `[0, 1]`
    /// bounds).
    pub fn admits(&self, c: &Chromosome, tolerance: f64) -> bool {
        let unit = |p: f64| (0.0..=1.0).contains(&p);
        let sum = c.probability_sum();
        self.n.contains(c.n)
            && self.m.contains(c.m)
            && self.k.contains(c.k)
            && c.k.is_multiple_of(2)
            && self.n_adm.contains(c.n_adm)
            && [c.p_pa, c.p_tra, c.p_ma, c.p_adm, c.p_rewiring, c.p_copying]
                .into_iter()
                .all(unit)
            && sum > 0.0
            && sum <= 1.0 + tolerance
    }
}

/// Gene intervals for a target with `target_nodes` nodes and `target_edges`
/// edges when graphs of `desired_nodes` nodes are synthesized:
///
/// * `m ∈ [max(1, ⌊E/N⌋ − 2), ⌈E/N⌉ + 2]`
/// * `K ∈ [max(2, ⌊2E/N⌋ − 2), ⌈2E/N⌉ + 2]`, even values only
/// * `n_adm ∈ [1, ⌊N/2⌋]`
/// * `n ∈ [K_max + 1, desired_nodes]`
pub fn derive_gene_ranges(
    target_nodes: usize,
    target_edges: usize,
    desired_nodes: usize,
) -> Result<GeneRanges> {
    if target_nodes < 2 || target_edges < 1 {
        return Err(Error::DegenerateGraph(format!(
            "target needs at least 2 nodes and 1 edge, got {target_nodes} and {target_edges}"
        )));
    }
    let ratio = target_edges as f64 / target_nodes as f64;
    let m = IntRange {
        min: (ratio.floor() as usize).saturating_sub(2).max(1),
        max: ratio.ceil() as usize + 2,
    };
    let k_lo = ((2.0 * ratio).floor() as usize).saturating_sub(2).max(2);
    let k_hi = (2.0 * ratio).ceil() as usize + 2;
    let k = IntRange {
        min: k_lo + k_lo % 2,
        max: (k_hi - k_hi % 2).max(k_lo + k_lo % 2),
    };
    if desired_nodes <= k.max || desired_nodes < SEED_NODES {
        return Err(Error::InfeasibleSize {
            desired: desired_nodes,
            k_max: k.max,
        });
    }
    Ok(GeneRanges {
        n: IntRange {
            min: k.max + 1,
            max: desired_nodes,
        },
        m,
        k,
        n_adm: IntRange {
            min: 1,
            max: (target_nodes / 2).max(1),
        },
    })
}

fn uniform_int<R: Rng + ?Sized>(r: IntRange, rng: &mut R) -> usize {
    rng.random_range(r.min..=r.max)
}

fn uniform_even<R: Rng + ?Sized>(r: IntRange, rng: &mut R) -> usize {
    r.min + 2 * rng.random_range(0..=(r.max - r.min) / 2)
}

/// Redraws gene `index` (field order of [`Chromosome`]) uniformly from its
/// interval.
fn resample_gene<R: Rng + ?Sized>(c: &mut Chromosome, r: &GeneRanges, index: usize, rng: &mut R) {
    match index {
        0 => c.n = uniform_int(r.n, rng),
        1 => c.p_pa = rng.random(),
        2 => c.p_tra = rng.random(),
        3 => c.p_ma = rng.random(),
        4 => c.p_adm = rng.random(),
        5 => c.m = uniform_int(r.m, rng),
        6 => c.k = uniform_even(r.k, rng),
        7 => c.p_rewiring = rng.random(),
        8 => c.p_copying = rng.random(),
        9 => c.n_adm = uniform_int(r.n_adm, rng),
        _ => unreachable!("gene index {index}"),
    }
}

fn swap_gene(a: &mut Chromosome, b: &mut Chromosome, index: usize) {
    use std::mem::swap;
    match index {
        0 => swap(&mut a.n, &mut b.n),
        1 => swap(&mut a.p_pa, &mut b.p_pa),
        2 => swap(&mut a.p_tra, &mut b.p_tra),
        3 => swap(&mut a.p_ma, &mut b.p_ma),
        4 => swap(&mut a.p_adm, &mut b.p_adm),
        5 => swap(&mut a.m, &mut b.m),
        6 => swap(&mut a.k, &mut b.k),
        7 => swap(&mut a.p_rewiring, &mut b.p_rewiring),
        8 => swap(&mut a.p_copying, &mut b.p_copying),
        9 => swap(&mut a.n_adm, &mut b.n_adm),
        _ => unreachable!("gene index {index}"),
    }
}

/// Every gene drawn uniformly from its interval, then repaired.
pub fn random_chromosome<R: Rng + ?Sized>(r: &GeneRanges, rng: &mut R) -> Chromosome {
    let mut c = Chromosome {
        n: r.n.min,
        p_pa: 0.0,
        p_tra: 0.0,
        p_ma: 0.0,
        p_adm: 0.0,
        m: r.m.min,
        k: r.k.min,
        p_rewiring: 0.0,
        p_copying: 0.0,
        n_adm: r.n_adm.min,
    };
    for i in 0..GENE_COUNT {
        resample_gene(&mut c, r, i, rng);
    }
    repair(&c, r)
}

fn unit(p: f64) -> f64 {
    if p.is_nan() {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// Clamps genes into their intervals, snaps `K` down to an even value, and
/// rescales the process probabilities to sum to 1 when they exceed it. An
/// all-zero probability vector becomes `0.125` each.
pub fn repair(c: &Chromosome, r: &GeneRanges) -> Chromosome {
    let mut out = *c;
    out.n = r.n.clamp(c.n);
    out.m = r.m.clamp(c.m);
    out.k = r.k.clamp(c.k - c.k % 2);
    out.n_adm = r.n_adm.clamp(c.n_adm);
    out.p_rewiring = unit(c.p_rewiring);
    out.p_copying = unit(c.p_copying);
    let mut probs = [unit(c.p_pa), unit(c.p_tra), unit(c.p_ma), unit(c.p_adm)];
    let sum: f64 = probs.iter().sum();
    if sum == 0.0 {
        probs = [0.125; 4];
    } else if sum > 1.0 + SUM_SLACK {
        probs.iter_mut().for_each(|p| *p /= sum);
    }
    [out.p_pa, out.p_tra, out.p_ma, out.p_adm] = probs;
    out
}

/// Uniform crossover: each gene is swapped between the children with
/// probability 0.5. Both children are repaired.
pub fn uniform_crossover<R: Rng + ?Sized>(
    a: &Chromosome,
    b: &Chromosome,
    r: &GeneRanges,
    rng: &mut R,
) -> (Chromosome, Chromosome) {
    let (mut x, mut y) = (*a, *b);
    for i in 0..GENE_COUNT {
        if rng.random_bool(0.5) {
            swap_gene(&mut x, &mut y, i);
        }
    }
    (repair(&x, r), repair(&y, r))
}

/// Redraws each gene independently with probability `gene_rate`, then
/// repairs.
pub fn mutate<R: Rng + ?Sized>(
    c: &Chromosome,
    r: &GeneRanges,
    gene_rate: f64,
    rng: &mut R,
) -> Chromosome {
    let mut out = *c;
    for i in 0..GENE_COUNT {
        if rng.random_bool(gene_rate) {
            resample_gene(&mut out, r, i, rng);
        }
    }
    repair(&out, r)
}
