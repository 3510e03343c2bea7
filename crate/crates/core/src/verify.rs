//! Identity sweeps producing machine-readable reports.
//!
//! Each sweep enumerates its parameter tuples in lexicographic order,
//! evaluates them (possibly in parallel) and reports failures in that same
//! order, so a report depends only on the configuration.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{char_coinv_fermionic, char_coinv_supernomial, chi_supernomial_side, spectral_flow_check};
use crate::error::{Error, Result};
use crate::exactpoly::{BiLaurent, ExactRational};
use crate::fermionic::{
    chi_fermionic, chi_fermionic_standard, chi_general, contributing_vectors, support_box, LatticeBox, QuadraticData,
    SiteVector,
};
use crate::qgauss::{qbin, qbin_plus, qbin_plus_dense, regenerate_extended_table};
use crate::supernomial::{qsup, LVector};
use crate::verlinde::{closed_form_dim, d_via_supernomial, d_vector, decompose_n};

/// The identities that can be swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Pascal,
    Rdc,
    Knuth,
    Ta,
    Tb,
    Rec,
    CharEq,
    Flow,
    Dims,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Pascal,
        Identity::Rdc,
        Identity::Knuth,
        Identity::Ta,
        Identity::Tb,
        Identity::Rec,
        Identity::CharEq,
        Identity::Flow,
        Identity::Dims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Pascal => "pascal",
            Identity::Rdc => "rdc",
            Identity::Knuth => "knuth",
            Identity::Ta => "ta",
            Identity::Tb => "tb",
            Identity::Rec => "rec",
            Identity::CharEq => "char-eq",
            Identity::Flow => "flow",
            Identity::Dims => "dims",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

/// Parameters of a sweep. Fields left out of a JSON config take the
/// defaults below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Smallest level `p` (tb, ta, rec, char-eq, flow, dims).
    pub p_min: i64,
    /// Largest level `p`.
    pub p_max: i64,
    /// Bound on `N_+ + N_-` (tb, ta, rec) or on every entry (char-eq, flow, dims).
    pub nmax: i64,
    /// Index window: `[-range, range]` for pascal, rdc and the `a` of knuth.
    pub range: i64,
    /// Largest supernomial entry (rec).
    pub lmax: i64,
    /// Largest `|a|` in the supernomial recurrences (rec).
    pub amax: i64,
    /// Random instances of the main recurrence (rec).
    pub random_cases: usize,
    /// Seed for the random instances.
    pub seed: u64,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
    /// Compare dimensions with the representation `-r` instead of `r` (dims).
    pub dual_dims: bool,
    /// Perturbs every left-hand side; used to check that failures surface.
    pub inject_fault: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            p_min: 2,
            p_max: 4,
            nmax: 5,
            range: 5,
            lmax: 4,
            amax: 10,
            random_cases: 200,
            seed: 0,
            jobs: None,
            dual_dims: false,
            inject_fault: false,
        }
    }
}

impl SweepConfig {
    /// Defaults tuned per identity (the windows quoted in each identity's
    /// documentation).
    pub fn for_identity(identity: Identity) -> Self {
        let base = SweepConfig::default();
        match identity {
            Identity::Pascal => SweepConfig { range: 8, ..base },
            Identity::CharEq | Identity::Flow | Identity::Dims => SweepConfig { p_max: 3, nmax: 4, ..base },
            Identity::Rec => SweepConfig { p_max: 3, ..base },
            _ => base,
        }
    }

    pub fn validate(&self, identity: Identity) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.p_min < 2 || self.p_min > self.p_max {
            return bad("p-range must be nonempty with p >= 2");
        }
        if self.nmax < 0 || self.range < 0 || self.lmax < 0 || self.amax < 0 {
            return bad("bounds must be nonnegative");
        }
        if self.jobs == Some(0) {
            return bad("jobs must be positive");
        }
        if matches!(identity, Identity::CharEq | Identity::Flow | Identity::Dims) && self.p_max > 6 {
            return bad("character sweeps support p <= 6");
        }
        Ok(())
    }
}

/// One counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub params: Value,
    pub lhs: BiLaurent,
    pub rhs: BiLaurent,
}

/// Result of one sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub ms: u64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn constant(x: &BigInt) -> BiLaurent {
    BiLaurent::from_terms([(ExactRational::ZERO, 0, x.clone())])
}

/// Result of evaluating one case.
type Outcome = Result<Option<Failure>>;

fn compare(params: Value, lhs: BiLaurent, rhs: BiLaurent, fault: bool) -> Option<Failure> {
    let lhs = if fault { &lhs + &BiLaurent::one() } else { lhs };
    (lhs != rhs).then_some(Failure { params, lhs, rhs })
}

fn run_cases<C: Sync>(cases: &[C], eval: impl Fn(&C) -> Outcome + Sync + Send) -> Result<Vec<Failure>> {
    let outcomes: Vec<Outcome> = cases.par_iter().map(eval).collect();
    let mut failures = Vec::new();
    for o in outcomes {
        if let Some(f) = o? {
            failures.push(f);
        }
    }
    Ok(failures)
}

/// Runs the sweep for `identity`.
pub fn run(identity: Identity, config: &SweepConfig) -> Result<IdentityReport> {
    config.validate(identity)?;
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let (cases, failures) = pool.install(|| match identity {
        Identity::Pascal => sweep_pascal(config),
        Identity::Rdc => sweep_rdc(config),
        Identity::Knuth => sweep_knuth(config),
        Identity::Ta => sweep_ta(config),
        Identity::Tb => sweep_tb(config),
        Identity::Rec => sweep_rec(config),
        Identity::CharEq => sweep_char_eq(config),
        Identity::Flow => sweep_flow(config),
        Identity::Dims => sweep_dims(config),
    })?;
    Ok(IdentityReport {
        identity: identity.name().to_string(),
        cases,
        failures,
        ms: start.elapsed().as_millis() as u64,
    })
}

fn sweep_pascal(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let w = c.range;
    let table = regenerate_extended_table(-w, w)?;
    let cases: Vec<(i64, i64)> = (-w..=w).flat_map(|n| (-w..=w).map(move |m| (n, m))).collect();
    let failures = run_cases(&cases, |&(n, m)| {
        let lhs = qbin_plus(n, m);
        let a = &(&BiLaurent::q_pow(m) * &qbin_plus(n - 1, m)) + &qbin_plus(n - 1, m - 1);
        let b = &qbin_plus(n - 1, m) + &(&BiLaurent::q_pow(n - m) * &qbin_plus(n - 1, m - 1));
        let regen = BiLaurent::from_uni(&table[&(n, m)], 0, ExactRational::ZERO);
        for (form, rhs) in [("pascal-a", a), ("pascal-b", b), ("regenerated", regen)] {
            if let Some(f) = compare(json!({"n": n, "m": m, "form": form}), lhs.clone(), rhs, c.inject_fault) {
                return Ok(Some(f));
            }
        }
        Ok(None)
    })?;
    Ok((cases.len() as u64, failures))
}

/// Range of `l` outside which every term of the rdc sum vanishes.
pub fn rdc_range(nn: i64, mm: i64, n: i64, m: i64) -> Option<(i64, i64)> {
    if nn + mm - n - m < 0 {
        None
    } else if nn - m >= 0 {
        Some((n + m - nn, n))
    } else {
        Some((n + m - mm, m))
    }
}

/// Right side of the rdc relation.
pub fn rdc_rhs(nn: i64, mm: i64, n: i64, m: i64) -> BiLaurent {
    let mut out = BiLaurent::zero();
    if let Some((lo, hi)) = rdc_range(nn, mm, n, m) {
        for l in lo..=hi {
            let t = &(&qbin_plus(nn - m, n - l) * &qbin_plus(mm - n, m - l)) * &qbin_plus(nn + mm - n - m + l, l);
            out = &out + &t.mul_monomial(ExactRational::from_integer((n - l) * (m - l)), 0);
        }
    }
    out
}

fn sweep_rdc(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let w = c.range;
    let mut cases = Vec::new();
    for nn in -w..=w {
        for mm in -w..=w {
            for n in -w..=w {
                for m in -w..=w {
                    cases.push([nn, mm, n, m]);
                }
            }
        }
    }
    let failures = run_cases(&cases, |&[nn, mm, n, m]| {
        let lhs = &qbin_plus(nn, n) * &qbin_plus(mm, m);
        Ok(compare(json!({"N": nn, "M": mm, "n": n, "m": m}), lhs, rdc_rhs(nn, mm, n, m), c.inject_fault))
    })?;
    Ok((cases.len() as u64, failures))
}

/// Left side of the Knuth-type identity; requires `M + S >= 0`.
pub fn knuth_lhs(big_m: i64, s: i64, a: i64) -> BiLaurent {
    let (mut lo, mut hi) = (i64::MIN, i64::MAX);
    if big_m >= 0 {
        lo = lo.max(-a);
        hi = hi.min(big_m - a);
    }
    if s >= 0 {
        lo = lo.max(0);
        hi = hi.min(s);
    }
    assert!(lo > i64::MIN && hi < i64::MAX, "needs M + S >= 0");
    let mut out = BiLaurent::zero();
    for k in lo..=hi {
        let t = &qbin_plus(big_m, a + k) * &qbin_plus(s, k);
        out = &out + &t.mul_monomial(ExactRational::from_integer(k * k + a * k), 0);
    }
    out
}

fn sweep_knuth(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let w = c.range;
    let mut cases = Vec::new();
    for big_m in -w..=w + 3 {
        for s in -w..=w + 3 {
            if big_m + s < 0 {
                continue;
            }
            for a in -w..=w {
                cases.push([big_m, s, a]);
            }
        }
    }
    let failures = run_cases(&cases, |&[big_m, s, a]| {
        Ok(compare(json!({"M": big_m, "S": s, "a": a}), knuth_lhs(big_m, s, a), qbin(big_m + s, s + a), c.inject_fault))
    })?;
    Ok((cases.len() as u64, failures))
}

/// Site vectors of the tb/ta sweeps: `N_+ + N_- <= nmax`,
/// `0 <= N_0 <= ... <= N_{d-1} <= N_+ + N_-`, `L >= 0`, and
/// `N_+` ranging over `[-p, N_+ + N_- + p]`.
pub fn tb_site_vectors(p: i64, d: usize, nmax: i64) -> Vec<SiteVector> {
    let mut out = Vec::new();
    for total in 0..=nmax {
        for np in -p..=total + p {
            let nm = total - np;
            let mut h = vec![0i64; d];
            loop {
                let n = SiteVector::new(p, d, np, nm, h.clone()).expect("d in range");
                if n.is_monotone() && n.l_vector().is_nonnegative() {
                    out.push(n);
                }
                if !advance_monotone(&mut h, total) {
                    break;
                }
            }
        }
    }
    out
}

/// Steps through nondecreasing vectors with entries in `[0, max]`.
fn advance_monotone(h: &mut [i64], max: i64) -> bool {
    for i in (0..h.len()).rev() {
        if h[i] < max {
            h[i] += 1;
            for j in i + 1..h.len() {
                h[j] = h[i];
            }
            return true;
        }
    }
    false
}

fn tb_cases(c: &SweepConfig) -> Vec<SiteVector> {
    let mut cases = Vec::new();
    for p in c.p_min..=c.p_max {
        for d in 0..=(2 * p - 3) as usize {
            cases.extend(tb_site_vectors(p, d, c.nmax));
        }
    }
    cases
}

fn site_params(n: &SiteVector) -> Value {
    json!({"p": n.p(), "d": n.d(), "N": n.components()})
}

fn sweep_tb(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let cases = tb_cases(c);
    let failures = run_cases(&cases, |n| {
        let lhs = chi_fermionic(n, &vec![0; n.d() + 2])?;
        let rhs = chi_supernomial_side(n.p(), &n.l_vector(), n.n_minus())?;
        Ok(compare(site_params(n), lhs, rhs, c.inject_fault))
    })?;
    Ok((cases.len() as u64, failures))
}

fn sweep_ta(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let cases: Vec<SiteVector> = tb_cases(c).into_iter().filter(SiteVector::is_well_balanced).collect();
    let failures = run_cases(&cases, |n| {
        let zeros = vec![0; n.d() + 2];
        let region = support_box(n, &zeros)?.widened(2);
        if let Some(bad) = contributing_vectors(n, &region)?.into_iter().find(|v| v.iter().any(|&x| x < 0)) {
            let mut params = site_params(n);
            params["negative_vector"] = json!(bad);
            return Ok(Some(Failure { params, lhs: chi_fermionic(n, &zeros)?, rhs: BiLaurent::zero() }));
        }
        let lhs = chi_fermionic_standard(n)?;
        let rhs = chi_supernomial_side(n.p(), &n.l_vector(), n.n_minus())?;
        Ok(compare(site_params(n), lhs, rhs, c.inject_fault))
    })?;
    Ok((cases.len() as u64, failures))
}

#[derive(Clone, Debug)]
enum RecCase {
    Supernomial { l: Vec<i64>, a: i64 },
    Truncation { l: Vec<i64>, a: i64 },
    Rec2 { n: SiteVector },
    Main { qd: QuadraticData, n: Vec<i64>, index: usize },
}

fn all_vectors(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![0i64; len];
    loop {
        out.push(v.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < max {
                v[i] += 1;
                for x in &mut v[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn rec_cases(c: &SweepConfig) -> Vec<RecCase> {
    let mut cases = Vec::new();
    for k in 2..=3 {
        for l in all_vectors(k, c.lmax) {
            for a in -c.amax..=c.amax {
                cases.push(RecCase::Supernomial { l: l.clone(), a });
            }
        }
    }
    for k in 1..=3 {
        for l in all_vectors(k, c.lmax) {
            for a in -c.amax..=c.amax {
                cases.push(RecCase::Truncation { l: l.clone(), a });
            }
        }
    }
    for p in c.p_min..=c.p_max {
        for d in 1..=(2 * p - 3) as usize {
            for n in tb_site_vectors(p, d - 1, c.nmax.min(4)) {
                cases.push(RecCase::Rec2 { n });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    for _ in 0..c.random_cases {
        let dim = rng.gen_range(1..=3);
        let mut a = vec![vec![0i64; dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let x = rng.gen_range(-2..=3);
                a[i][j] = x;
                a[j][i] = x;
            }
        }
        let u = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
        let v = (0..dim).map(|_| ExactRational::new(rng.gen_range(-2..=2), 2)).collect();
        let w = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
        let qd = QuadraticData::new(a, u, v, w).expect("symmetric by construction");
        let n = (0..dim).map(|_| rng.gen_range(-2..=4)).collect();
        let index = rng.gen_range(0..dim);
        cases.push(RecCase::Main { qd, n, index });
    }
    cases
}

/// Both sides of the main recurrence at index `a` over `region`: `chi[N]`
/// and `chi[N - e_a] + z^(u_a) q^(K_a + v_a - A_aa/2) chi[N - e_a A]`,
/// the last sum taken over `region - e_a`.
pub fn main_recurrence_sides(
    qd: &QuadraticData,
    n: &[i64],
    region: &LatticeBox,
    a: usize,
) -> Result<(BiLaurent, BiLaurent)> {
    let dim = qd.dim();
    let lhs = chi_general(qd, n, region)?;
    let mut n1 = n.to_vec();
    n1[a] -= 1;
    let first = chi_general(qd, &n1, region)?;
    let n2: Vec<i64> = (0..dim).map(|b| n[b] - qd.matrix()[a][b]).collect();
    let mut offset = vec![0; dim];
    offset[a] = -1;
    let third = chi_general(qd, &n2, &region.shifted(&offset))?;
    let shift = ExactRational::from_integer(n[a] + qd.w()[a]) + qd.v()[a] - ExactRational::half(qd.matrix()[a][a]);
    Ok((lhs, &first + &third.mul_monomial(shift, qd.u()[a])))
}

fn sweep_rec(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let cases = rec_cases(c);
    let failures = run_cases(&cases, |case| {
        let f = c.inject_fault;
        Ok(match case {
            RecCase::Supernomial { l, a } => {
                let k = l.len();
                let mut lk = l.clone();
                lk[k - 1] += 1;
                let mut lk1 = l.clone();
                lk1[k - 2] += 1;
                let lhs = qsup(&LVector::new(lk)?, *a)?;
                let rhs = &qsup(&LVector::new(lk1)?, a - 1)? + &(&BiLaurent::q_pow(*a) * &qsup(&LVector::new(l.clone())?, *a)?);
                compare(json!({"kind": "supernomial", "L": l, "a": a}), lhs, rhs, f)
            }
            RecCase::Truncation { l, a } => {
                let mut padded = l.clone();
                padded.push(0);
                let lhs = qsup(&LVector::new(padded)?, *a)?;
                let rhs = qsup(&LVector::new(l.clone())?, *a)?;
                compare(json!({"kind": "truncation", "L": l, "a": a}), lhs, rhs, f)
            }
            RecCase::Rec2 { n } => {
                let padded = n.padded()?;
                let lhs = chi_fermionic(n, &vec![0; n.d() + 2])?;
                let rhs = chi_fermionic(&padded, &vec![0; padded.d() + 2])?;
                let mut params = site_params(n);
                params["kind"] = json!("rec2");
                compare(params, lhs, rhs, f)
            }
            RecCase::Main { qd, n, index } => {
                let region = LatticeBox::cube(qd.dim(), -2, 2);
                let (lhs, rhs) = main_recurrence_sides(qd, n, &region, *index)?;
                compare(json!({"kind": "main", "A": qd.matrix(), "N": n, "a": index}), lhs, rhs, f)
            }
        })
    })?;
    Ok((cases.len() as u64, failures))
}

/// Decomposable site vectors with `d = p - 1`: `|N_pm| <= nmax`,
/// `0 <= N_i <= nmax`, monotone, `L >= 0`.
pub fn coinvariant_site_vectors(p: i64, nmax: i64) -> Vec<SiteVector> {
    let d = (p - 1) as usize;
    let mut out = Vec::new();
    for np in -nmax..=nmax {
        for nm in -nmax..=nmax {
            let total = np + nm;
            if total < 0 {
                continue;
            }
            let mut h = vec![0i64; d];
            loop {
                let n = SiteVector::new(p, d, np, nm, h.clone()).expect("d = p - 1");
                if n.is_monotone() && n.l_vector().is_nonnegative() {
                    out.push(n);
                }
                if !advance_monotone(&mut h, total.min(nmax)) {
                    break;
                }
            }
        }
    }
    out
}

fn level_cases(c: &SweepConfig) -> Vec<(SiteVector, i64)> {
    let mut out = Vec::new();
    for p in c.p_min..=c.p_max {
        for n in coinvariant_site_vectors(p, c.nmax) {
            for r in 0..p {
                out.push((n.clone(), r));
            }
        }
    }
    out
}

fn level_params(n: &SiteVector, r: i64) -> Value {
    json!({"p": n.p(), "r": r, "N": n.components()})
}

fn sweep_char_eq(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let cases = level_cases(c);
    let failures = run_cases(&cases, |(n, r)| {
        let f = char_coinv_fermionic(n.p(), *r, n, n.d())?.normalized();
        let s = char_coinv_supernomial(n.p(), *r, n)?.normalized();
        let mut params = level_params(n, *r);
        if f.q_shift != s.q_shift || f.z_shift != s.z_shift {
            params["shift_mismatch"] = json!(true);
        }
        let lhs = f.poly.mul_monomial(f.q_shift, 0);
        let rhs = s.poly.mul_monomial(s.q_shift, 0);
        Ok(compare(params, lhs, rhs, c.inject_fault))
    })?;
    Ok((cases.len() as u64, failures))
}

fn sweep_flow(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let cases = level_cases(c);
    let failures = run_cases(&cases, |(n, r)| {
        let check = spectral_flow_check(n.p(), *r, n)?;
        Ok(compare(level_params(n, *r), check.lhs, check.rhs, c.inject_fault))
    })?;
    Ok((cases.len() as u64, failures))
}

/// Dimension routes for one `(N, r)`: the character at `q = z = 1`, the
/// supernomial sum, the fusion-ring value and (when applicable) the
/// closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionRoutes {
    pub character: BigInt,
    pub supernomial: BigInt,
    pub fusion: BigInt,
    pub closed_form: Option<BigInt>,
}

/// Evaluates every dimension route; `dual` reads the fusion vector at
/// `-r mod p` instead of `r`.
pub fn dimension_routes(n: &SiteVector, r: i64, dual: bool) -> Result<DimensionRoutes> {
    let p = n.p();
    let character = char_coinv_supernomial(p, r, n)?.poly.eval_q1_z1();
    let supernomial = d_via_supernomial(n, r)?;
    let dv = d_vector(p as usize, &decompose_n(n)?)?;
    let fusion = dv.get(if dual { -r } else { r }).clone();
    let closed_form = closed_form_dim(p as usize, &n.l_vector())?;
    Ok(DimensionRoutes { character, supernomial, fusion, closed_form })
}

fn sweep_dims(c: &SweepConfig) -> Result<(u64, Vec<Failure>)> {
    let cases = level_cases(c);
    let failures = run_cases(&cases, |(n, r)| {
        let routes = dimension_routes(n, *r, c.dual_dims)?;
        let lhs = constant(&routes.character);
        let others = [Some(&routes.supernomial), Some(&routes.fusion), routes.closed_form.as_ref()];
        for (name, other) in ["supernomial", "fusion", "closed-form"].iter().zip(others) {
            if let Some(v) = other {
                let mut params = level_params(n, *r);
                params["route"] = json!(name);
                if let Some(f) = compare(params, lhs.clone(), constant(v), c.inject_fault) {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    })?;
    Ok((cases.len() as u64, failures))
}

/// Forces the memoized extended binomials of a window into the cache.
pub fn warm_cache(window: i64) {
    (-window..=window).into_par_iter().for_each(|n| {
        for m in -window..=window {
            let _ = qbin_plus_dense(n, m);
        }
    });
}
