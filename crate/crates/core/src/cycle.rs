//! Exact tooling on the directed n-cycle, where a weight vector is
//! consistent iff its sum is non-negative: state counts, an exact rejection
//! sampler, and the coverage and histogram experiments that compare the
//! chain against it.

use std::collections::HashSet;
use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use rayon::prelude::*;

use crate::checkers::CheckerKind;
use crate::error::{Error, Result};
use crate::graph::gen_cycle;
use crate::mcmc::Chain;
use crate::report::write_params;
use crate::weight::Weight;
use crate::weights::{InitStrategy, WeightAssignment, WeightDomain};

fn discrete_width(domain: &WeightDomain<i64>) -> Result<u64> {
    domain
        .cardinality()
        .ok_or_else(|| Error::InvalidDomain(format!("{domain} is too wide")))
}

/// Number of consistent weight vectors on the n-cycle, i.e. vectors in
/// `[lo, hi]^n` with non-negative sum. Dynamic program over partial sums.
pub fn enumerate_consistent_cycle(n: usize, domain: &WeightDomain<i64>) -> Result<u128> {
    let k = discrete_width(domain)? as usize;
    let lo = domain.lo();
    // counts[s] = vectors so far with sum (s + len * lo)
    let mut counts: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = vec![0u128; counts.len() + k - 1];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for slot in &mut next[s..s + k] {
                *slot = slot.checked_add(c).ok_or(Error::Overflow("state count"))?;
            }
        }
        counts = next;
    }
    // shifted sum index s corresponds to sum s + n * lo
    let offset = (n as i128) * (lo as i128);
    let mut total: u128 = 0;
    for (s, &c) in counts.iter().enumerate() {
        if s as i128 + offset >= 0 {
            total = total.checked_add(c).ok_or(Error::Overflow("state count"))?;
        }
    }
    Ok(total)
}

/// `|W|^n`, the number of all weight vectors.
pub fn cycle_state_space(n: usize, domain: &WeightDomain<i64>) -> Result<u128> {
    let k = discrete_width(domain)? as u128;
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.checked_mul(k).ok_or(Error::Overflow("state space"))?;
    }
    Ok(total)
}

/// Draws i.i.d. uniform vectors until one has non-negative sum. Returns the
/// sample and the number of vectors drawn.
pub fn exact_cycle_sample<W: Weight, R: Rng + ?Sized>(
    n: usize,
    domain: &WeightDomain<W>,
    rng: &mut R,
) -> Result<(WeightAssignment<W>, u64)> {
    if domain.hi() < W::zero() {
        return Err(Error::InvalidDomain(format!(
            "{domain} has no non-negative values"
        )));
    }
    let mut v = vec![W::zero(); n];
    let mut trials = 0;
    loop {
        trials += 1;
        let mut sum = W::zero();
        for x in v.iter_mut() {
            *x = domain.sample(rng);
            sum += *x;
        }
        if sum >= W::zero() {
            return Ok((WeightAssignment::new(v), trials));
        }
    }
}

/// Exactly uniform sample from the consistent weights on the n-cycle.
pub fn exact_cycle_sampler<W: Weight, R: Rng + ?Sized>(
    n: usize,
    domain: &WeightDomain<W>,
    rng: &mut R,
) -> Result<WeightAssignment<W>> {
    exact_cycle_sample(n, domain, rng).map(|(w, _)| w)
}

/// Mixed-radix encoding of integer weight vectors: digit `x - lo` in base
/// `hi - lo + 1`, first entry least significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateCodec {
    lo: i64,
    base: u64,
    len: usize,
}

impl StateCodec {
    pub fn new(len: usize, domain: &WeightDomain<i64>) -> Result<Self> {
        let base = discrete_width(domain)?;
        let mut cap: u64 = 1;
        for _ in 0..len {
            cap = cap.checked_mul(base).ok_or(Error::Overflow("state key"))?;
        }
        Ok(Self {
            lo: domain.lo(),
            base,
            len,
        })
    }

    pub fn encode(&self, w: &[i64]) -> u64 {
        debug_assert_eq!(w.len(), self.len);
        w.iter()
            .rev()
            .fold(0, |acc, &x| acc * self.base + (x - self.lo) as u64)
    }

    pub fn decode(&self, mut key: u64) -> Vec<i64> {
        (0..self.len)
            .map(|_| {
                let d = key % self.base;
                key /= self.base;
                self.lo + d as i64
            })
            .collect()
    }
}

/// Where coverage samples come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSource {
    /// `tau` chain steps from the all-zero weights per sample.
    Mcmc { tau: u64, checker: CheckerKind },
    /// The rejection sampler.
    Exact,
}

impl SampleSource {
    pub fn mcmc(tau: u64) -> Self {
        SampleSource::Mcmc {
            tau,
            checker: CheckerKind::BiDijkstra,
        }
    }

    pub fn tau(&self) -> Option<u64> {
        match self {
            SampleSource::Mcmc { tau, .. } => Some(*tau),
            SampleSource::Exact => None,
        }
    }
}

impl fmt::Display for SampleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleSource::Mcmc { .. } => f.write_str("mcmc"),
            SampleSource::Exact => f.write_str("exact"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverageReport {
    pub n: usize,
    pub domain: WeightDomain<i64>,
    pub source: SampleSource,
    pub total_samples_drawn: u64,
    pub distinct_states_seen: u64,
    /// `|S|`, the number of consistent states.
    pub states: u64,
    /// `ceil(0.99 |S|)`.
    pub target_count: u64,
    pub reached: bool,
    /// Samples drawn when the target was hit.
    pub samples_at_target: Option<u64>,
}

impl CoverageReport {
    /// Samples at target in units of `|S|`.
    pub fn normalized(&self) -> Option<f64> {
        self.samples_at_target
            .map(|s| s as f64 / self.states as f64)
    }
}

/// Draws independent samples until 99% of the consistent states have been
/// seen, giving up after `abort_multiplier * |S|` samples.
pub fn coverage_experiment<R: Rng + ?Sized>(
    n: usize,
    domain: &WeightDomain<i64>,
    source: SampleSource,
    rng: &mut R,
    abort_multiplier: u64,
) -> Result<CoverageReport> {
    let states = u64::try_from(enumerate_consistent_cycle(n, domain)?)
        .map_err(|_| Error::Overflow("state count"))?;
    let codec = StateCodec::new(n, domain)?;
    let target_count = (states * 99).div_ceil(100);
    let limit = abort_multiplier.saturating_mul(states);

    let g = gen_cycle(n)?;
    let zeros = WeightAssignment::constant(n, 0i64);
    let mut chain = match source {
        SampleSource::Mcmc { checker, .. } => Some(Chain::new(
            &g,
            *domain,
            InitStrategy::Zero,
            checker,
            rng.random(),
        )?),
        SampleSource::Exact => None,
    };

    let mut seen = HashSet::with_capacity(states as usize);
    let mut drawn = 0u64;
    while (seen.len() as u64) < target_count && drawn < limit {
        let key = match (&mut chain, source) {
            (Some(c), SampleSource::Mcmc { tau, .. }) => {
                c.restart(zeros.clone())?;
                for _ in 0..tau {
                    c.step();
                }
                codec.encode(c.weights().values())
            }
            _ => codec.encode(exact_cycle_sampler(n, domain, rng)?.values()),
        };
        drawn += 1;
        seen.insert(key);
    }
    let reached = seen.len() as u64 >= target_count;
    Ok(CoverageReport {
        n,
        domain: *domain,
        source,
        total_samples_drawn: drawn,
        distinct_states_seen: seen.len() as u64,
        states,
        target_count,
        reached,
        samples_at_target: reached.then_some(drawn),
    })
}

pub const COVERAGE_HEADER: &str =
    "n,domain,source,tau,rep,samples,distinct,states,target,reached,samples_at_target,normalized";

/// One row per `(repetition, report)`.
pub fn write_coverage_csv<O: Write>(
    reports: &[(u64, CoverageReport)],
    params: &[(&str, String)],
    out: &mut O,
) -> Result<()> {
    write_params(out, params)?;
    writeln!(out, "{COVERAGE_HEADER}")?;
    for (rep, r) in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.domain,
            r.source,
            r.source.tau().map(|t| t.to_string()).unwrap_or_default(),
            rep,
            r.total_samples_drawn,
            r.distinct_states_seen,
            r.states,
            r.target_count,
            r.reached,
            r.samples_at_target
                .map(|t| t.to_string())
                .unwrap_or_default(),
            r.normalized()
                .map(|x| format!("{x:.4}"))
                .unwrap_or_default(),
        )?;
    }
    Ok(())
}

/// Weight counts per checkpoint, summed over repetitions.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram<W> {
    pub domain: WeightDomain<W>,
    pub bins: usize,
    pub checkpoints: Vec<u64>,
    /// `counts[c][b]`: edges with weight in bin `b` after `checkpoints[c]`.
    pub counts: Vec<Vec<u64>>,
}

impl<W: Weight> Histogram<W> {
    /// Bin of a weight: one per value for discrete domains, equal-width
    /// intervals otherwise.
    pub fn bin_of(&self, x: W) -> usize {
        bin_index(&self.domain, self.bins, x)
    }

    /// Lower and upper edge of bin `b` (equal for one-value bins).
    pub fn bin_range(&self, b: usize) -> (f64, f64) {
        let lo = self.domain.lo().as_f64();
        if W::DISCRETE {
            (lo + b as f64, lo + b as f64)
        } else {
            let width = (self.domain.hi().as_f64() - lo) / self.bins as f64;
            (lo + width * b as f64, lo + width * (b + 1) as f64)
        }
    }

    pub fn shares(&self, c: usize) -> Vec<f64> {
        let total: u64 = self.counts[c].iter().sum();
        self.counts[c]
            .iter()
            .map(|&k| k as f64 / total as f64)
            .collect()
    }

    /// Per bin `share / uniform_share - 1`.
    pub fn relative_deviation(&self, c: usize) -> Vec<f64> {
        let uniform = 1.0 / self.bins as f64;
        self.shares(c).iter().map(|s| s / uniform - 1.0).collect()
    }

    pub fn max_abs_relative_deviation(&self, c: usize) -> f64 {
        self.relative_deviation(c)
            .into_iter()
            .fold(0.0, |m, d| m.max(d.abs()))
    }
}

fn bin_index<W: Weight>(domain: &WeightDomain<W>, bins: usize, x: W) -> usize {
    let lo = domain.lo().as_f64();
    if W::DISCRETE {
        (x.as_f64() - lo) as usize
    } else {
        let span = domain.hi().as_f64() - lo;
        if span <= 0.0 {
            return 0;
        }
        (((x.as_f64() - lo) / span * bins as f64) as usize).min(bins - 1)
    }
}

/// Runs `reps` independent chains on the n-cycle from `init` and bins all
/// edge weights at each checkpoint. `bins` is ignored for discrete domains.
/// Chains run in parallel; per-repetition seeds are drawn from `rng` up
/// front, so the result does not depend on scheduling.
pub fn weight_histogram<W: Weight, R: Rng + ?Sized>(
    n: usize,
    domain: &WeightDomain<W>,
    checkpoints: &[u64],
    init: InitStrategy,
    reps: usize,
    bins: usize,
    rng: &mut R,
) -> Result<Histogram<W>> {
    let bins = match domain.cardinality() {
        Some(k) => usize::try_from(k).map_err(|_| Error::Overflow("bin count"))?,
        None if bins > 0 => bins,
        None => return Err(Error::InvalidArgument("need at least one bin".into())),
    };
    let mut checkpoints = checkpoints.to_vec();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let g = gen_cycle(n)?;
    let seeds: Vec<u64> = (0..reps).map(|_| rng.random()).collect();

    let per_rep = seeds
        .par_iter()
        .map(|&seed| {
            let mut chain = Chain::new(&g, *domain, init, CheckerKind::BiDijkstra, seed)?;
            let mut counts = vec![vec![0u64; bins]; checkpoints.len()];
            for (c, &t) in checkpoints.iter().enumerate() {
                while chain.steps() < t {
                    chain.step();
                }
                for &x in chain.weights().values() {
                    counts[c][bin_index(domain, bins, x)] += 1;
                }
            }
            Ok(counts)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut counts = vec![vec![0u64; bins]; checkpoints.len()];
    for rep in per_rep {
        for (acc, row) in counts.iter_mut().zip(rep) {
            for (a, k) in acc.iter_mut().zip(row) {
                *a += k;
            }
        }
    }
    Ok(Histogram {
        domain: *domain,
        bins,
        checkpoints,
        counts,
    })
}

pub const HISTOGRAM_HEADER: &str = "steps,bin_lo,bin_hi,count,share";

pub fn write_histogram_csv<W: Weight, O: Write>(
    h: &Histogram<W>,
    params: &[(&str, String)],
    out: &mut O,
) -> Result<()> {
    write_params(out, params)?;
    writeln!(out, "{HISTOGRAM_HEADER}")?;
    for (c, &t) in h.checkpoints.iter().enumerate() {
        let shares = h.shares(c);
        for (b, (count, share)) in h.counts[c].iter().zip(shares).enumerate() {
            let (lo, hi) = h.bin_range(b);
            writeln!(out, "{t},{lo},{hi},{count},{share:.6}")?;
        }
    }
    Ok(())
}

/// Generator for repetition `i` of a run seeded with `seed`.
pub fn repetition_rng(seed: u64, i: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trit() -> WeightDomain<i64> {
        WeightDomain::new(-1, 1).unwrap()
    }

    fn brute_force(n: usize, lo: i64, hi: i64) -> u128 {
        let k = (hi - lo + 1) as u64;
        let total = k.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut sum = 0i64;
                for _ in 0..n {
                    sum += lo + (c % k) as i64;
                    c /= k;
                }
                sum >= 0
            })
            .count() as u128
    }

    #[test]
    fn small_counts_match_brute_force() {
        assert_eq!(enumerate_consistent_cycle(3, &trit()).unwrap(), 17);
        for n in 1..=10 {
            assert_eq!(
                enumerate_consistent_cycle(n, &trit()).unwrap(),
                brute_force(n, -1, 1),
                "n={n}"
            );
        }
        let d = WeightDomain::new(-3, 2).unwrap();
        for n in 1..=6 {
            assert_eq!(
                enumerate_consistent_cycle(n, &d).unwrap(),
                brute_force(n, -3, 2)
            );
        }
    }

    #[test]
    fn table_counts() {
        assert_eq!(enumerate_consistent_cycle(8, &trit()).unwrap(), 3834);
        assert_eq!(enumerate_consistent_cycle(12, &trit()).unwrap(), 302_615);
        assert_eq!(enumerate_consistent_cycle(16, &trit()).unwrap(), 24_121_674);
        assert_eq!(cycle_state_space(8, &trit()).unwrap(), 6561);
    }

    #[test]
    fn negative_domain_has_no_states_and_overflow_is_reported() {
        let neg = WeightDomain::new(-3, -1).unwrap();
        assert_eq!(enumerate_consistent_cycle(4, &neg).unwrap(), 0);
        assert!(exact_cycle_sampler(4, &neg, &mut Pcg64::seed_from_u64(0)).is_err());
        let wide = WeightDomain::new(-1000, 1000).unwrap();
        assert!(matches!(
            cycle_state_space(20, &wide),
            Err(Error::Overflow(_))
        ));
        assert!(StateCodec::new(20, &wide).is_err());
    }

    #[test]
    fn codec_round_trip() {
        let d = WeightDomain::new(-2, 3).unwrap();
        let codec = StateCodec::new(5, &d).unwrap();
        let mut seen = HashSet::new();
        let mut rng = Pcg64::seed_from_u64(1);
        for _ in 0..2000 {
            let w: Vec<i64> = (0..5).map(|_| d.sample(&mut rng)).collect();
            let key = codec.encode(&w);
            assert_eq!(codec.decode(key), w);
            seen.insert((key, w));
        }
        let keys: HashSet<u64> = seen.iter().map(|(k, _)| *k).collect();
        assert_eq!(keys.len(), seen.len());
        assert_eq!(codec.encode(&[-2; 5]), 0);
        assert_eq!(codec.encode(&[3; 5]), 6u64.pow(5) - 1);
    }

    #[test]
    fn exact_sampler_is_consistent() {
        let mut rng = Pcg64::seed_from_u64(2);
        let zero = WeightDomain::new(0, 0).unwrap();
        assert_eq!(
            exact_cycle_sampler(1, &zero, &mut rng).unwrap().values(),
            &[0]
        );
        for _ in 0..1000 {
            let w = exact_cycle_sampler(8, &trit(), &mut rng).unwrap();
            assert!(w.values().iter().sum::<i64>() >= 0);
        }
        let real = WeightDomain::new(-1.0, 1.0).unwrap();
        let w = exact_cycle_sampler(6, &real, &mut rng).unwrap();
        assert!(w.values().iter().sum::<f64>() >= 0.0);
    }

    #[test]
    fn exact_coverage_on_small_cycle() {
        let mut rng = Pcg64::seed_from_u64(3);
        let r = coverage_experiment(4, &trit(), SampleSource::Exact, &mut rng, 10).unwrap();
        assert_eq!(r.states, 50);
        assert_eq!(r.target_count, 50);
        assert!(r.reached);
        assert!(r.samples_at_target.unwrap() >= 50);
        assert!(r.distinct_states_seen <= r.states);
    }

    #[test]
    fn short_chains_do_not_cover() {
        let mut rng = Pcg64::seed_from_u64(4);
        let r = coverage_experiment(6, &trit(), SampleSource::mcmc(1), &mut rng, 3).unwrap();
        assert!(!r.reached);
        assert_eq!(r.total_samples_drawn, 3 * r.states);
        // one step from zero: all zeros, or a single edge raised to 1
        assert!(r.distinct_states_seen <= 7);
    }

    #[test]
    fn histogram_starts_at_maximum() {
        let mut rng = Pcg64::seed_from_u64(5);
        let d = WeightDomain::new(-5, 5).unwrap();
        let h = weight_histogram(20, &d, &[0, 200], InitStrategy::Maximum, 4, 0, &mut rng).unwrap();
        assert_eq!(h.bins, 11);
        assert_eq!(h.counts[0][10], 80);
        assert_eq!(h.counts[0].iter().sum::<u64>(), 80);
        assert!(h.counts[1][10] < 80);
        assert_eq!(h.bin_range(0), (-5.0, -5.0));
    }

    #[test]
    fn histogram_is_schedule_independent() {
        let d = WeightDomain::new(-3, 3).unwrap();
        let a = weight_histogram(
            10,
            &d,
            &[50],
            InitStrategy::Maximum,
            8,
            0,
            &mut Pcg64::seed_from_u64(6),
        )
        .unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| {
            weight_histogram(
                10,
                &d,
                &[50],
                InitStrategy::Maximum,
                8,
                0,
                &mut Pcg64::seed_from_u64(6),
            )
        });
        assert_eq!(a, b.unwrap());
    }

    #[test]
    fn real_histogram_bins() {
        let d = WeightDomain::new(-1.0f64, 1.0).unwrap();
        let mut rng = Pcg64::seed_from_u64(7);
        let h = weight_histogram(10, &d, &[0], InitStrategy::Maximum, 2, 4, &mut rng).unwrap();
        assert_eq!(h.counts[0], vec![0, 0, 0, 20]);
        assert_eq!(h.bin_range(3), (0.5, 1.0));
    }

    #[test]
    fn csv_writers() {
        let mut rng = Pcg64::seed_from_u64(8);
        let r = coverage_experiment(3, &trit(), SampleSource::mcmc(6), &mut rng, 10).unwrap();
        let mut buf = Vec::new();
        write_coverage_csv(&[(0, r)], &[("seed", "8".into())], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# seed=8");
        assert_eq!(lines[1], COVERAGE_HEADER);
        assert!(lines[2].starts_with("3,-1:1,mcmc,6,0,"));

        let d = WeightDomain::new(0, 1).unwrap();
        let h = weight_histogram(3, &d, &[0], InitStrategy::Zero, 1, 0, &mut rng).unwrap();
        let mut buf = Vec::new();
        write_histogram_csv(&h, &[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!("{HISTOGRAM_HEADER}\n0,0,0,3,1.000000\n0,1,1,0,0.000000\n")
        );
    }

    #[test]
    fn repetition_rngs_differ() {
        let a: u64 = repetition_rng(1, 0).random();
        let b: u64 = repetition_rng(1, 1).random();
        let a2: u64 = repetition_rng(1, 0).random();
        assert_ne!(a, b);
        assert_eq!(a, a2);
    }
}
