//! Seeded Monte Carlo harness: sweeps one model parameter, estimates success
//! probabilities for the library's properties, and emits CSV.
//!
//! Every trial derives its RNG streams from `(master_seed, tag, global
//! trial index)`, so records reproduce bit-for-bit (timing aside) and trials
//! can run in parallel without sharing state.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::expansion::check_expansion;
use crate::generators::{
    color_uniform, default_m, default_r, gen_host, k_out_capped, perturb, sample_prefix,
    split_host, t_value, theta, HostKind, HostSpec,
};
use crate::graph::{Edge, Graph};
use crate::hamiltonicity::{find_hamilton, pack_rainbow_hamilton, PackParams};
use crate::rainbow_connectivity::is_rainbow_connected;
use crate::seed;
use crate::{Error, Result};

/// Set-size fraction for expansion checks: sets up to |S| ≤ n/5.
pub const EXPANSION_MAX_FRACTION: f64 = 0.2;

/// A property a trial can succeed or fail at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// The scaffold construction (capped 6-out of H′ plus Q₁, boosted by
    /// Q₂) yields a Hamilton cycle.
    Hamiltonian,
    /// The packing pipeline completes with a single rainbow Hamilton cycle.
    RainbowHamiltonian,
    /// The packing pipeline completes all t cycles.
    RainbowPackT,
    /// The perturbed colored graph is rainbow connected.
    RainbowConnected,
    /// The scaffold base graph is connected and vertex-expanding.
    ExpansionOk,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Hamiltonian,
        Property::RainbowHamiltonian,
        Property::RainbowPackT,
        Property::RainbowConnected,
        Property::ExpansionOk,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::Hamiltonian => "hamiltonian",
            Property::RainbowHamiltonian => "rainbow_hamiltonian",
            Property::RainbowPackT => "rainbow_pack_t",
            Property::RainbowConnected => "rainbow_connected",
            Property::ExpansionOk => "expansion_ok",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown property '{s}'; expected one of hamiltonian, \
                     rainbow_hamiltonian, rainbow_pack_t, rainbow_connected, expansion_ok"
                ))
            })
    }
}

/// Which model parameter the sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVar {
    M,
    R,
    N,
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVar::M => "m",
            SweepVar::R => "r",
            SweepVar::N => "n",
        })
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(SweepVar::M),
            "r" => Ok(SweepVar::R),
            "n" => Ok(SweepVar::N),
            _ => Err(Error::InvalidInput(format!(
                "unknown sweep variable '{s}'; expected m, r, or n"
            ))),
        }
    }
}

/// A full sweep description. `None` knobs fall back to the asymptotic
/// threshold defaults computed per point.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub property: Property,
    pub host: HostSpec,
    pub sweep: SweepVar,
    pub values: Vec<u64>,
    /// Perturbation size when not swept; defaults to (435 + 75θ)tn.
    pub m: Option<usize>,
    /// Color count when not swept; defaults to (120 + 20θ)n.
    pub r: Option<u32>,
    /// Cycle count for the packing property; defaults to the model's t.
    pub t: Option<usize>,
    pub trials: usize,
    pub master_seed: u64,
    pub expansion_small_cap: usize,
    pub expansion_samples: usize,
    /// Pipeline knobs for the packing properties.
    pub pack: PackParams,
}

impl ExperimentPlan {
    pub fn new(property: Property, host: HostSpec) -> Self {
        ExperimentPlan {
            property,
            host,
            sweep: SweepVar::M,
            values: Vec::new(),
            m: None,
            r: None,
            t: None,
            trials: 30,
            master_seed: 0,
            expansion_small_cap: 3,
            expansion_samples: 10_000,
            pack: PackParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidInput("sweep value list is empty".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be >= 1".into()));
        }
        Ok(())
    }

    /// Parses the line-oriented `key = value` plan format. Unknown keys are
    /// rejected; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut property = None;
        let mut host_kind = None;
        let mut n = None;
        let mut delta = None;
        let mut blob_edge_prob = None;
        let mut plan_fields: Vec<(String, String)> = Vec::new();

        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("expected key = value, got '{line}'"),
                });
            };
            let key = key.trim();
            let value = value.trim().to_string();
            let fail = |msg: String| Error::Parse { line: ln + 1, msg };
            match key {
                "property" => property = Some(Property::from_str(&value)?),
                "host" => host_kind = Some(HostKind::from_str(&value)?),
                "n" => n = Some(value.parse::<usize>().map_err(|e| fail(e.to_string()))?),
                "delta" => delta = Some(value.parse::<f64>().map_err(|e| fail(e.to_string()))?),
                "blob_edge_prob" => {
                    blob_edge_prob =
                        Some(value.parse::<f64>().map_err(|e| fail(e.to_string()))?)
                }
                _ => plan_fields.push((key.to_string(), value)),
            }
        }

        let property =
            property.ok_or_else(|| Error::InvalidInput("plan is missing 'property'".into()))?;
        let host_kind =
            host_kind.ok_or_else(|| Error::InvalidInput("plan is missing 'host'".into()))?;
        let n = n.ok_or_else(|| Error::InvalidInput("plan is missing 'n'".into()))?;
        let delta = delta.ok_or_else(|| Error::InvalidInput("plan is missing 'delta'".into()))?;
        let mut host = HostSpec::new(host_kind, n, delta);
        if let Some(p) = blob_edge_prob {
            host.blob_edge_prob = p;
        }

        let mut plan = ExperimentPlan::new(property, host);
        for (key, value) in plan_fields {
            let bad = |e: &dyn fmt::Display| {
                Error::InvalidInput(format!("bad value for '{key}': {e}"))
            };
            match key.as_str() {
                "sweep" => plan.sweep = SweepVar::from_str(&value)?,
                "values" => {
                    plan.values = value
                        .split(',')
                        .map(|v| v.trim().parse::<u64>().map_err(|e| bad(&e)))
                        .collect::<Result<Vec<u64>>>()?
                }
                "m" => plan.m = Some(value.parse().map_err(|e| bad(&e))?),
                "r" => plan.r = Some(value.parse().map_err(|e| bad(&e))?),
                "t" => plan.t = Some(value.parse().map_err(|e| bad(&e))?),
                "trials" => plan.trials = value.parse().map_err(|e| bad(&e))?,
                "seed" => plan.master_seed = value.parse().map_err(|e| bad(&e))?,
                "expansion_small_cap" => {
                    plan.expansion_small_cap = value.parse().map_err(|e| bad(&e))?
                }
                "expansion_samples" => {
                    plan.expansion_samples = value.parse().map_err(|e| bad(&e))?
                }
                "pack_k" => plan.pack.k = value.parse().map_err(|e| bad(&e))?,
                "pack_split_p" => plan.pack.split_p = value.parse().map_err(|e| bad(&e))?,
                "pack_chunk" => plan.pack.chunk = Some(value.parse().map_err(|e| bad(&e))?),
                "pack_target" => plan.pack.target = Some(value.parse().map_err(|e| bad(&e))?),
                "pack_q1_frac" => plan.pack.q1_frac = Some(value.parse().map_err(|e| bad(&e))?),
                "pack_rotation_budget" => {
                    plan.pack.rotation_budget = Some(value.parse().map_err(|e| bad(&e))?)
                }
                _ => {
                    return Err(Error::InvalidInput(format!("unknown plan key '{key}'")));
                }
            }
        }
        if plan.values.is_empty() {
            // Single-point plan: sweep m over its one resolved value.
            plan.sweep = SweepVar::M;
            plan.values = vec![plan
                .m
                .unwrap_or_else(|| default_m(plan.host.n, plan.host.delta))
                as u64];
        }
        Ok(plan)
    }
}

/// One sweep point's resolved parameters.
#[derive(Clone, Copy, Debug)]
struct Point {
    spec: HostSpec,
    m: usize,
    r: u32,
    t: usize,
}

/// Result of one sweep point. A skipped point keeps `trials = 0` and the
/// reason; otherwise `successes` counts trials on which the property held.
#[derive(Clone, Debug)]
pub struct ExperimentRecord {
    pub property: Property,
    pub host_kind: HostKind,
    pub n: usize,
    pub delta: f64,
    pub m: usize,
    pub r: u32,
    pub trials: usize,
    pub successes: usize,
    pub mean_ms: f64,
    pub master_seed: u64,
    /// Global trial indices; together with the master seed they re-derive
    /// every stream of a single trial.
    pub trial_seeds: Vec<u64>,
    pub skipped: Option<String>,
}

impl ExperimentRecord {
    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Field-by-field equality excluding wall-time.
    pub fn same_outcome(&self, other: &ExperimentRecord) -> bool {
        self.property == other.property
            && self.host_kind == other.host_kind
            && self.n == other.n
            && self.delta == other.delta
            && self.m == other.m
            && self.r == other.r
            && self.trials == other.trials
            && self.successes == other.successes
            && self.master_seed == other.master_seed
            && self.trial_seeds == other.trial_seeds
            && self.skipped == other.skipped
    }
}

fn resolve_point(plan: &ExperimentPlan, value: u64) -> Result<Point> {
    let mut spec = plan.host;
    let mut m = plan.m;
    let mut r = plan.r;
    match plan.sweep {
        SweepVar::N => spec.n = value as usize,
        SweepVar::M => m = Some(value as usize),
        SweepVar::R => r = Some(value as u32),
    }
    spec.validate()?;
    Ok(Point {
        spec,
        m: m.unwrap_or_else(|| default_m(spec.n, spec.delta)),
        r: r.unwrap_or_else(|| default_r(spec.n, spec.delta)),
        t: plan.t.unwrap_or_else(|| t_value(spec.n, spec.delta)),
    })
}

/// Builds the Hamilton-search scaffold for one seeded trial: the capped
/// 6-out of H′ as the base, and Q₁/Q₂ drawn without replacement from H″ ∪ R
/// with sizes ⌊(45 + 15θ)n⌋ and 36n. The returned Q₂ order is the
/// consumption order.
pub fn hamilton_scaffold(
    host: &Graph,
    delta: f64,
    m: usize,
    master_seed: u64,
    trial_index: u64,
) -> Result<(Graph, Vec<Edge>, Vec<Edge>)> {
    let n = host.n();
    let mut prng = seed::stream(master_seed, seed::TAG_PERTURB, trial_index);
    let extra = perturb(host, m, &mut prng)?;
    let mut srng = seed::stream(master_seed, seed::TAG_SPLIT, trial_index);
    let split = split_host(host, 1.0 / 20.0, &mut srng)?;
    let mut krng = seed::stream(master_seed, seed::TAG_KOUT, trial_index);
    let base = k_out_capped(&split.h_prime, 6, &mut krng);

    let mut pool: Vec<Edge> = split.h_double_prime.edges().to_vec();
    pool.extend_from_slice(&extra);
    let th = theta(delta);
    let q1_len = ((45.0 + 15.0 * th) * n as f64).floor() as usize;
    let q2_len = 36 * n;
    if pool.len() < q1_len + q2_len {
        return Err(Error::Infeasible(format!(
            "booster pool H\" ∪ R holds {} edges, need |Q1| + |Q2| = {}",
            pool.len(),
            q1_len + q2_len
        )));
    }
    let mut qrng = seed::stream(master_seed, seed::TAG_BOOSTERS, trial_index);
    sample_prefix(&mut pool, q1_len + q2_len, &mut qrng);
    let q2 = pool[q1_len..q1_len + q2_len].to_vec();
    pool.truncate(q1_len);
    Ok((base, pool, q2))
}

fn run_trial(plan: &ExperimentPlan, point: &Point, trial_index: u64) -> Result<bool> {
    let master = plan.master_seed;
    let mut hrng = seed::stream(master, seed::TAG_HOST, trial_index);
    let host = gen_host(&point.spec, &mut hrng)?;
    match plan.property {
        Property::RainbowConnected => {
            let mut prng = seed::stream(master, seed::TAG_PERTURB, trial_index);
            let extra = perturb(&host, point.m, &mut prng)?;
            let g = host.union(&extra)?;
            let mut crng = seed::stream(master, seed::TAG_COLOR, trial_index);
            let cg = color_uniform(&g, point.r, &mut crng)?;
            Ok(is_rainbow_connected(&cg)?.connected)
        }
        Property::Hamiltonian => {
            let (base, q1, q2) =
                hamilton_scaffold(&host, point.spec.delta, point.m, master, trial_index)?;
            Ok(find_hamilton(&base, &q1, &q2)?.is_cycle())
        }
        Property::ExpansionOk => {
            let (base, q1, _) =
                hamilton_scaffold(&host, point.spec.delta, point.m, master, trial_index)?;
            let joined = base.union(&q1)?;
            let mut erng = seed::stream(master, seed::TAG_EXPANSION, trial_index);
            let report = check_expansion(
                &joined,
                EXPANSION_MAX_FRACTION,
                plan.expansion_small_cap,
                plan.expansion_samples,
                &mut erng,
            )?;
            Ok(report.connected && report.expansion_holds())
        }
        Property::RainbowHamiltonian | Property::RainbowPackT => {
            let t = match plan.property {
                Property::RainbowHamiltonian => 1,
                _ => point.t,
            };
            let mut prng = seed::stream(master, seed::TAG_PERTURB, trial_index);
            let extra = perturb(&host, point.m, &mut prng)?;
            let g = host.union(&extra)?;
            let mut crng = seed::stream(master, seed::TAG_COLOR, trial_index);
            let cg = color_uniform(&g, point.r, &mut crng)?;
            let pack_seed = seed::derive_key(master, "pack-trial", trial_index);
            let packing = pack_rainbow_hamilton(&cg, &host, t, &plan.pack, pack_seed)?;
            Ok(packing.is_complete())
        }
    }
}

fn run_point(plan: &ExperimentPlan, point: &Point, point_index: usize) -> Result<ExperimentRecord> {
    let base_index = (point_index * plan.trials) as u64;
    let mut record = ExperimentRecord {
        property: plan.property,
        host_kind: point.spec.kind,
        n: point.spec.n,
        delta: point.spec.delta,
        m: point.m,
        r: point.r,
        trials: 0,
        successes: 0,
        mean_ms: 0.0,
        master_seed: plan.master_seed,
        trial_seeds: Vec::new(),
        skipped: None,
    };

    // Feasibility probe: regenerate trial 0's host (streams are stateless,
    // so the real trial is unaffected) and compare m to its complement.
    let mut probe_rng = seed::stream(plan.master_seed, seed::TAG_HOST, base_index);
    let probe = gen_host(&point.spec, &mut probe_rng)?;
    let cap = probe.complement_count();
    if point.m > cap {
        record.skipped = Some(format!(
            "m = {} exceeds the host's {} available non-edges",
            point.m, cap
        ));
        return Ok(record);
    }

    let outcomes: Vec<(bool, f64)> = (0..plan.trials)
        .into_par_iter()
        .map(|trial| {
            let trial_index = base_index + trial as u64;
            let start = Instant::now();
            let ok = run_trial(plan, point, trial_index)?;
            Ok((ok, start.elapsed().as_secs_f64() * 1e3))
        })
        .collect::<Result<_>>()?;

    record.trials = plan.trials;
    record.successes = outcomes.iter().filter(|(ok, _)| *ok).count();
    record.mean_ms = outcomes.iter().map(|(_, ms)| ms).sum::<f64>() / plan.trials as f64;
    record.trial_seeds = (0..plan.trials).map(|t| base_index + t as u64).collect();
    Ok(record)
}

/// Runs every sweep point. Infeasible points (m above the host's complement)
/// are recorded as skipped; everything else is evaluated over `plan.trials`
/// seeded trials.
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<ExperimentRecord>> {
    plan.validate()?;
    let mut records = Vec::with_capacity(plan.values.len());
    for (pi, &value) in plan.values.iter().enumerate() {
        let point = resolve_point(plan, value)?;
        records.push(run_point(plan, &point, pi)?);
    }
    Ok(records)
}

/// Renders records as CSV with a pinned column order. Skipped points show
/// `trials = 0` and an `nan` fraction.
pub fn emit_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from("property,host,n,delta,m,r,trials,successes,fraction,mean_ms,seed\n");
    for rec in records {
        let fraction = if rec.trials == 0 {
            "nan".to_string()
        } else {
            format!("{:.4}", rec.fraction())
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{:.3},{}\n",
            rec.property,
            rec.host_kind,
            rec.n,
            rec.delta,
            rec.m,
            rec.r,
            rec.trials,
            rec.successes,
            fraction,
            rec.mean_ms,
            rec.master_seed
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn tiny_plan() -> ExperimentPlan {
        let mut plan = ExperimentPlan::new(
            Property::RainbowConnected,
            HostSpec::new(HostKind::CompleteBipartite, 12, 0.25),
        );
        plan.values = vec![0];
        plan.r = Some(2);
        plan.trials = 4;
        plan.master_seed = 99;
        plan
    }

    #[test]
    fn csv_header_only_for_empty_records() {
        let csv = emit_csv(&[]);
        assert_eq!(csv, "property,host,n,delta,m,r,trials,successes,fraction,mean_ms,seed\n");
    }

    #[test]
    fn csv_one_record_two_lines() {
        let rec = ExperimentRecord {
            property: Property::RainbowConnected,
            host_kind: HostKind::TwoBlob,
            n: 100,
            delta: 0.3,
            m: 7,
            r: 4,
            trials: 3,
            successes: 1,
            mean_ms: 12.5,
            master_seed: 5,
            trial_seeds: vec![0, 1, 2],
            skipped: None,
        };
        let csv = emit_csv(&[rec]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "rainbow_connected,two_blob,100,0.3,7,4,3,1,0.3333,12.500,5");
    }

    #[test]
    fn csv_skipped_point_shows_nan_fraction() {
        let rec = ExperimentRecord {
            property: Property::Hamiltonian,
            host_kind: HostKind::RandomDense,
            n: 50,
            delta: 0.2,
            m: 9999,
            r: 1,
            trials: 0,
            successes: 0,
            mean_ms: 0.0,
            master_seed: 1,
            trial_seeds: vec![],
            skipped: Some("m too large".into()),
        };
        let line = emit_csv(&[rec]);
        assert!(line.lines().nth(1).unwrap().contains(",0,0,nan,"));
    }

    #[test]
    fn property_and_sweep_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::from_str(p.name()).unwrap(), p);
        }
        for v in [SweepVar::M, SweepVar::R, SweepVar::N] {
            assert_eq!(SweepVar::from_str(&v.to_string()).unwrap(), v);
        }
        assert!(Property::from_str("bogus").is_err());
        assert!(SweepVar::from_str("q").is_err());
    }

    #[test]
    fn plan_rejects_empty_values_and_zero_trials() {
        let mut plan = tiny_plan();
        plan.values.clear();
        assert!(run_plan(&plan).is_err());
        let mut plan = tiny_plan();
        plan.trials = 0;
        assert!(run_plan(&plan).is_err());
    }

    #[test]
    fn single_trial_gives_binary_successes() {
        let mut plan = tiny_plan();
        plan.trials = 1;
        let records = run_plan(&plan).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].trials, 1);
        assert!(records[0].successes <= 1);
    }

    #[test]
    fn oversized_m_skips_the_point() {
        // The bipartite host K_{3,9} has 27 edges on 12 vertices; its
        // complement holds C(12,2) - 27 = 39 pairs.
        let mut plan = tiny_plan();
        plan.values = vec![40];
        let records = run_plan(&plan).unwrap();
        assert_eq!(records[0].trials, 0);
        let reason = records[0].skipped.as_deref().unwrap();
        assert!(reason.contains("40") && reason.contains("39"), "{reason}");
    }

    #[test]
    fn reruns_reproduce_records() {
        let plan = tiny_plan();
        let a = run_plan(&plan).unwrap();
        let b = run_plan(&plan).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(x.same_outcome(y));
        }
    }

    /// More random cross edges can only help rainbow connectivity: with
    /// m = 0 the two blobs are separate components (fraction 0); with every
    /// cross pair added the diameter drops to 2 and r = 7 colors make each
    /// 2-path rainbow with overwhelming probability.
    #[test]
    fn rainbow_connectivity_improves_with_m() {
        let mut plan = ExperimentPlan::new(
            Property::RainbowConnected,
            HostSpec::new(HostKind::TwoBlob, 60, 0.05),
        );
        plan.r = Some(7);
        plan.trials = 6;
        plan.master_seed = 1234;
        plan.values = vec![0, 900];
        let records = run_plan(&plan).unwrap();
        assert_eq!(records[0].successes, 0, "disconnected blobs cannot be connected");
        assert!(
            records[1].successes >= 5,
            "dense cross edges should connect: {}/6",
            records[1].successes
        );
        assert!(records[0].successes <= records[1].successes);
    }

    #[test]
    fn hamilton_scaffold_has_documented_shapes() {
        let n = 300;
        let host = Graph::complete(n);
        let delta = 0.3;
        let (base, q1, q2) = hamilton_scaffold(&host, delta, 0, 4242, 0).unwrap();
        let th = theta(delta);
        assert_eq!(q1.len(), ((45.0 + 15.0 * th) * n as f64).floor() as usize);
        assert_eq!(q2.len(), 36 * n);
        assert_eq!(base.n(), n);
        // Each vertex claims at most 6 out-edges, so |E| ≤ 6n even though
        // individual degrees drift above 6 from incoming picks.
        assert!(base.edge_count() <= 6 * n);
        // Q lives in H" ∪ R, disjoint from the 6-out's H′ source edges.
        let qset: HashSet<Edge> = q1.iter().chain(q2.iter()).copied().collect();
        assert_eq!(qset.len(), q1.len() + q2.len(), "Q edges are distinct");
        for e in base.edges() {
            assert!(!qset.contains(e), "Q must avoid the sparse half");
        }
    }

    #[test]
    fn plan_parser_round_trips_keys() {
        let text = "\
# comment line
property = rainbow_pack_t
host = random_dense
n = 200
delta = 0.3
sweep = r
values = 400, 800
m = 0
t = 2
trials = 5
seed = 77
pack_target = 350
pack_k = 2
";
        let plan = ExperimentPlan::parse(text).unwrap();
        assert_eq!(plan.property, Property::RainbowPackT);
        assert_eq!(plan.host.kind, HostKind::RandomDense);
        assert_eq!(plan.host.n, 200);
        assert_eq!(plan.sweep, SweepVar::R);
        assert_eq!(plan.values, vec![400, 800]);
        assert_eq!(plan.m, Some(0));
        assert_eq!(plan.t, Some(2));
        assert_eq!(plan.trials, 5);
        assert_eq!(plan.master_seed, 77);
        assert_eq!(plan.pack.target, Some(350));
        assert_eq!(plan.pack.k, 2);
    }

    #[test]
    fn plan_parser_rejects_junk() {
        assert!(matches!(
            ExperimentPlan::parse("property rainbow_connected"),
            Err(Error::Parse { line: 1, .. })
        ));
        let missing = ExperimentPlan::parse("property = hamiltonian\nhost = two_blob\nn = 10");
        assert!(matches!(missing, Err(Error::InvalidInput(_))));
        let unknown =
            ExperimentPlan::parse("property = hamiltonian\nhost = two_blob\nn = 10\ndelta = 0.1\nwat = 3");
        assert!(matches!(unknown, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn defaulted_single_point_plan_sweeps_one_m() {
        let plan =
            ExperimentPlan::parse("property = rainbow_connected\nhost = two_blob\nn = 40\ndelta = 0.1\nm = 3")
                .unwrap();
        assert_eq!(plan.sweep, SweepVar::M);
        assert_eq!(plan.values, vec![3]);
    }
}
