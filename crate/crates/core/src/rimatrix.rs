//! Matrices with rapidly increasing (RI) integer entries.
//!
//! A `D × m` matrix is RI when every entry is a positive integer, rows
//! increase strictly and each row starts above the end of the previous one.
//! The useful consequence is that every `k × k` submatrix has determinant
//! `(1 ± ε)` times its main-diagonal product `P`. [`build_exact`] produces
//! such matrices by the entry-by-entry induction, with the stronger
//! per-diagonal condition `∏Δ < ηP` (`η = ε / D!`) and the row condition
//! `a(i,j-1) a(i,j) < ε a(i,j+1)`; [`verify_ri`] checks them independently.

use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det_integer, ExactScalar};
use crate::par;

/// Default refusal threshold for predicted entry sizes.
pub const DEFAULT_BUDGET_BITS: u64 = 10_000_000;
/// Above this many diagonal constraints per entry the closed bound is used.
pub const DEFAULT_CONSTRAINT_CAP: u64 = 100_000;
/// Entries larger than this are written as `{"pow2": e, "plus": r}`.
const COMPACT_BITS: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiMode {
    ExactInductive,
    GeometricTemplate,
    StretchedTemplate,
}

impl fmt::Display for RiMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RiMode::ExactInductive => "exact-inductive",
            RiMode::GeometricTemplate => "geometric-template",
            RiMode::StretchedTemplate => "stretched-template",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixFile", try_from = "MatrixFile")]
pub struct RIMatrix {
    pub rows: usize,
    pub m: usize,
    /// Row-major, `entries[i][j]` is `a(i+1, j+1)`.
    pub entries: Vec<Vec<BigUint>>,
    pub epsilon: Option<ExactScalar>,
    pub mode: RiMode,
}

impl RIMatrix {
    pub fn from_rows(
        entries: Vec<Vec<BigUint>>,
        epsilon: Option<ExactScalar>,
        mode: RiMode,
    ) -> Result<Self> {
        let rows = entries.len();
        let m = entries.first().map_or(0, Vec::len);
        if rows == 0 || m == 0 {
            return Err(Error::InvalidParameter("empty matrix".into()));
        }
        if let Some(bad) = entries.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.len(),
            });
        }
        Ok(RIMatrix {
            rows,
            m,
            entries,
            epsilon,
            mode,
        })
    }

    /// `a(i, j)` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigUint) {
        self.entries[i - 1][j - 1] = value;
    }

    /// `ε / D!`, when the matrix carries an `ε`.
    pub fn eta(&self) -> Option<ExactScalar> {
        self.epsilon
            .as_ref()
            .map(|e| e / &ExactScalar::from(factorial(self.rows)))
    }

    pub fn max_bits(&self) -> u64 {
        self.entries.iter().flatten().map(BigUint::bits).max().unwrap_or(0)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn eps_parts(epsilon: &ExactScalar) -> Result<(BigUint, BigUint)> {
    if !epsilon.is_positive() || *epsilon >= 1 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let p = epsilon.numer().to_biguint().expect("positive");
    let q = epsilon.denom().to_biguint().expect("positive");
    Ok((p, q))
}

/// Which lower bound fixed an entry of [`build_exact`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Binding {
    /// `a(1,1) = 1`, `a(1,2) = 2`.
    Anchor,
    /// `a(i,1) > a(i-1,m)`.
    RowRestart,
    /// `a(i,j) > a(i,j-1)`.
    Monotone,
    /// `a(i,j) > a(i,j-1) a(i,j-2) / ε`.
    ExtraC,
    /// `a(i,j) > ∏Δ / (η Q)` for the submatrix on `rows × cols` (1-based)
    /// and the diagonal picking column `cols[perm[t]]` in row `rows[t]`.
    Diagonal {
        rows: Vec<usize>,
        cols: Vec<usize>,
        perm: Vec<usize>,
    },
    /// `a(i,j) > a(i,j-1) ∏_{r<i} a(r,m) / η`.
    ClosedBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryTrace {
    pub row: usize,
    pub col: usize,
    pub binding: Binding,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub budget_bits: u64,
    pub constraint_cap: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            budget_bits: DEFAULT_BUDGET_BITS,
            constraint_cap: DEFAULT_CONSTRAINT_CAP,
        }
    }
}

/// Bit size of the largest entry [`build_exact`] would produce, from the
/// floating-point log recurrence of the row and `2 × 2` constraints.
pub fn predicted_bits(rows: usize, m: usize, epsilon: &ExactScalar) -> f64 {
    let eps = epsilon.as_rational();
    let log_inv = |num: &BigInt, den: &BigInt| log2_big(den) - log2_big(num);
    let log_inv_eps = log_inv(eps.numer(), eps.denom());
    let log_inv_eta = log_inv_eps + log2_big(&BigInt::from(factorial(rows)));
    let mut b = vec![vec![0f64; m]; rows];
    let mut top: f64 = 0.0;
    for i in 0..rows {
        for j in 0..m {
            let v = if i == 0 && j < 2 {
                j as f64
            } else if j == 0 {
                b[i - 1][m - 1]
            } else {
                let mut v = b[i][j - 1];
                if j >= 2 {
                    v = v.max(b[i][j - 1] + b[i][j - 2] + log_inv_eps);
                }
                for ii in 0..i {
                    for jj in 0..j {
                        v = v.max(b[i][jj] + b[ii][j] - b[ii][jj] + log_inv_eta);
                    }
                }
                v
            };
            b[i][j] = v;
            top = top.max(v);
        }
    }
    top + 1.0
}

fn log2_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().unwrap_or(f64::INFINITY).log2()
    } else {
        let shifted: BigInt = n >> (bits - 64);
        shifted.to_f64().unwrap_or(f64::INFINITY).log2() + (bits - 64) as f64
    }
}

/// Number of diagonal constraints bounding `a(i,j)` (1-based).
fn constraint_count(i: usize, j: usize) -> u64 {
    let binom = |n: usize, k: usize| -> f64 {
        (0..k).fold(1f64, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
    };
    let mut total = 0f64;
    for k in 2..=i.min(j) {
        let perms: f64 = (1..=k).map(|x| x as f64).product();
        total += binom(i - 1, k - 1) * binom(j - 1, k - 1) * (perms - perms / k as f64);
    }
    total.min(u64::MAX as f64) as u64
}

/// Strict lower bound `num / den` with the constraint that produced it.
struct Bound {
    num: BigUint,
    den: BigUint,
    binding: Binding,
}

impl Bound {
    fn new(num: BigUint, den: BigUint, binding: Binding) -> Self {
        Bound { num, den, binding }
    }

    fn exceeds(&self, other: &Bound) -> bool {
        &self.num * &other.den > &other.num * &self.den
    }

    /// Smallest integer strictly above the bound.
    fn next_integer(&self) -> BigUint {
        self.num.div_floor(&self.den) + 1u32
    }
}

pub fn build_exact(rows: usize, m: usize, epsilon: &ExactScalar) -> Result<RIMatrix> {
    build_exact_with(rows, m, epsilon, &BuildOptions::default()).map(|(mat, _)| mat)
}

/// [`build_exact`] with explicit limits, also returning the binding
/// constraint of every entry in row-major order.
pub fn build_exact_with(
    rows: usize,
    m: usize,
    epsilon: &ExactScalar,
    opts: &BuildOptions,
) -> Result<(RIMatrix, Vec<EntryTrace>)> {
    if rows < 1 || m <= rows {
        return Err(Error::InvalidParameter(format!(
            "need m > D >= 1, got D = {rows}, m = {m}"
        )));
    }
    let (ep, eq) = eps_parts(epsilon)?;
    let predicted = predicted_bits(rows, m, epsilon);
    if predicted > opts.budget_bits as f64 {
        return Err(Error::GuardrailRefusal {
            predicted_bits: predicted.min(u64::MAX as f64) as u64,
            budget_bits: opts.budget_bits,
        });
    }
    // 1/η = D! q / p
    let inv_eta_num = factorial(rows) * &eq;
    let inv_eta_den = ep.clone();

    let mut a: Vec<Vec<BigUint>> = vec![Vec::with_capacity(m); rows];
    let mut trace = Vec::with_capacity(rows * m);
    for i in 0..rows {
        for j in 0..m {
            if i == 0 && j < 2 {
                a[0].push(BigUint::from(j as u32 + 1));
                trace.push(EntryTrace {
                    row: 1,
                    col: j + 1,
                    binding: Binding::Anchor,
                });
                continue;
            }
            let mut best = if j == 0 {
                Bound::new(a[i - 1][m - 1].clone(), BigUint::one(), Binding::RowRestart)
            } else {
                Bound::new(a[i][j - 1].clone(), BigUint::one(), Binding::Monotone)
            };
            let mut offer = |b: Bound| {
                if b.exceeds(&best) {
                    best = b;
                }
            };
            if j >= 2 {
                offer(Bound::new(
                    &a[i][j - 1] * &a[i][j - 2] * &eq,
                    ep.clone(),
                    Binding::ExtraC,
                ));
            }
            if i >= 1 && j >= 1 {
                if constraint_count(i + 1, j + 1) <= opts.constraint_cap {
                    if let Some(b) = diagonal_bound(&a, i, j) {
                        offer(Bound::new(
                            b.num * &inv_eta_num,
                            b.den * &inv_eta_den,
                            b.binding,
                        ));
                    }
                } else {
                    let above: BigUint = (0..i).map(|r| &a[r][m - 1]).product();
                    offer(Bound::new(
                        &a[i][j - 1] * above * &inv_eta_num,
                        inv_eta_den.clone(),
                        Binding::ClosedBound,
                    ));
                }
            }
            a[i].push(best.next_integer());
            trace.push(EntryTrace {
                row: i + 1,
                col: j + 1,
                binding: best.binding,
            });
        }
    }
    let mat = RIMatrix::from_rows(a, Some(epsilon.clone()), RiMode::ExactInductive)?;
    Ok((mat, trace))
}

/// Largest `∏Δ / Q` over submatrices with bottom-right entry `(i, j)` (0-based)
/// and diagonals `Δ` avoiding that entry; `Q` is the main-diagonal product
/// without `a(i,j)`.
fn diagonal_bound(a: &[Vec<BigUint>], i: usize, j: usize) -> Option<Bound> {
    let mut best: Option<Bound> = None;
    for k in 2..=(i + 1).min(j + 1) {
        for rs in (0..i).combinations(k - 1) {
            for cs in (0..j).combinations(k - 1) {
                let rows: Vec<usize> = rs.iter().copied().chain([i]).collect();
                let cols: Vec<usize> = cs.iter().copied().chain([j]).collect();
                let q: BigUint = (0..k - 1).map(|t| &a[rows[t]][cols[t]]).product();
                for perm in (0..k).permutations(k) {
                    if perm[k - 1] == k - 1 {
                        continue;
                    }
                    let prod: BigUint = (0..k).map(|t| &a[rows[t]][cols[perm[t]]]).product();
                    let cand = Bound::new(
                        prod,
                        q.clone(),
                        Binding::Diagonal {
                            rows: rows.iter().map(|r| r + 1).collect(),
                            cols: cols.iter().map(|c| c + 1).collect(),
                            perm: perm.clone(),
                        },
                    );
                    if best.as_ref().is_none_or(|b| cand.exceeds(b)) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best
}

/// `a(i,j) = 2^(s · j · t^(i-1))`. Rows increase and restart upwards only
/// when `t > m`; none of the determinant conditions is implied.
pub fn build_geometric(rows: usize, m: usize, s: u64, t: u64) -> Result<RIMatrix> {
    if rows < 1 || m < 1 {
        return Err(Error::InvalidParameter("need D, m >= 1".into()));
    }
    if s < 1 || t < 2 {
        return Err(Error::InvalidParameter(format!(
            "need s >= 1 and t >= 2, got s = {s}, t = {t}"
        )));
    }
    if t <= m as u64 {
        return Err(Error::InvalidParameter(format!(
            "rows only restart above the previous row when t > m (t = {t}, m = {m})"
        )));
    }
    let entries = (0..rows)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let e = (t as u128).checked_pow(i as u32).and_then(|p| {
                        p.checked_mul(s as u128 * j as u128)
                    });
                    e.filter(|&e| e <= u64::MAX as u128)
                        .map(|e| BigUint::one() << e as u64)
                        .ok_or_else(|| Error::InvalidParameter("exponent overflow".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RIMatrix::from_rows(entries, None, RiMode::GeometricTemplate)
}

/// Power-of-two template with `2d` rows interleaving direction rows and
/// scale rows: row `2i-1` holds `2^(s(2i-1)c)` and row `2i` holds
/// `2^(2si + c)` in column `c`.
///
/// Rows increase, but rows do not restart above each other; the template only
/// keeps the dominance pattern needed by the line construction.
pub fn build_stretched(d: usize, m: usize, s: u64) -> Result<RIMatrix> {
    if d < 1 || m < 1 || s < 1 {
        return Err(Error::InvalidParameter("need d, m, s >= 1".into()));
    }
    let mut entries = Vec::with_capacity(2 * d);
    for i in 1..=d as u64 {
        entries.push((1..=m as u64).map(|c| BigUint::one() << (s * (2 * i - 1) * c)).collect());
        entries.push((1..=m as u64).map(|c| BigUint::one() << (2 * s * i + c)).collect());
    }
    RIMatrix::from_rows(entries, None, RiMode::StretchedTemplate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Positive,
    Monotone,
    RowRestart,
    Ri,
    ExtraC,
    Ind,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Positive => "positive",
            Condition::Monotone => "monotone",
            Condition::RowRestart => "row-restart",
            Condition::Ri => "ri",
            Condition::ExtraC => "extraC",
            Condition::Ind => "ind",
        })
    }
}

/// Entry positions (1-based) showing a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub condition: Condition,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiReport {
    pub epsilon: ExactScalar,
    pub sampling: CheckMode,
    pub submatrices: u64,
    /// Largest submatrix size on which the per-diagonal condition was checked.
    pub ind_max_k: usize,
    pub checks: Vec<Check>,
}

impl RiReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, condition: Condition) -> bool {
        self.checks
            .iter()
            .find(|c| c.condition == condition)
            .is_some_and(|c| c.passed)
    }

    pub fn witness(&self, condition: Condition) -> Option<&Witness> {
        self.checks
            .iter()
            .find(|c| c.condition == condition)
            .and_then(|c| c.witness.as_ref())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Exhaustive when the number of square submatrices is at most this.
    pub cap: u64,
    pub samples: usize,
    pub seed: u64,
    pub jobs: usize,
    pub ind_max_k: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: 200_000,
            samples: 2_000,
            seed: 0,
            jobs: 1,
            ind_max_k: 6,
        }
    }
}

pub fn verify_ri(mat: &RIMatrix, epsilon: &ExactScalar) -> Result<RiReport> {
    verify_ri_with(mat, epsilon, &VerifyOptions::default())
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, t| acc.saturating_mul((n - t) as u64) / (t as u64 + 1))
}

pub fn verify_ri_with(
    mat: &RIMatrix,
    epsilon: &ExactScalar,
    opts: &VerifyOptions,
) -> Result<RiReport> {
    let (ep, eq) = eps_parts(epsilon)?;
    let a = &mat.entries;
    let (rows, m) = (mat.rows, mat.m);
    let mut checks = Vec::new();

    let mut first = None;
    'pos: for i in 0..rows {
        for j in 0..m {
            if a[i][j].is_zero() {
                first = Some(Witness {
                    rows: vec![i + 1],
                    cols: vec![j + 1],
                    detail: "entry is zero".into(),
                });
                break 'pos;
            }
        }
    }
    checks.push(check(Condition::Positive, first));

    let mut first = None;
    'mono: for i in 0..rows {
        for j in 1..m {
            if a[i][j] <= a[i][j - 1] {
                first = Some(Witness {
                    rows: vec![i + 1],
                    cols: vec![j, j + 1],
                    detail: "row does not increase".into(),
                });
                break 'mono;
            }
        }
    }
    checks.push(check(Condition::Monotone, first));

    let first = (1..rows).find(|&i| a[i][0] <= a[i - 1][m - 1]).map(|i| Witness {
        rows: vec![i, i + 1],
        cols: vec![m, 1],
        detail: "row starts below the end of the previous row".into(),
    });
    checks.push(check(Condition::RowRestart, first));

    let mut first = None;
    'extra: for i in 0..rows {
        for j in 1..m.saturating_sub(1) {
            if &a[i][j - 1] * &a[i][j] * &eq >= &a[i][j + 1] * &ep {
                first = Some(Witness {
                    rows: vec![i + 1],
                    cols: vec![j, j + 1, j + 2],
                    detail: format!("a({0},{1}) a({0},{2}) >= epsilon a({0},{3})", i + 1, j, j + 1, j + 2),
                });
                break 'extra;
            }
        }
    }
    checks.push(check(Condition::ExtraC, first));

    let kmax = rows.min(m);
    let total: u64 = (2..=kmax).map(|k| binom(rows, k).saturating_mul(binom(m, k))).sum();
    let exhaustive = total <= opts.cap;
    let mut subs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let full_k = if exhaustive { kmax } else { kmax.min(3) };
    for k in 2..=full_k {
        for rs in (0..rows).combinations(k) {
            for cs in (0..m).combinations(k) {
                subs.push((rs.clone(), cs));
            }
        }
    }
    let sampling = if exhaustive {
        CheckMode::Exhaustive
    } else {
        if kmax >= 4 {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.samples {
                let k = rng.gen_range(4..=kmax);
                let mut rs = sample(&mut rng, rows, k).into_vec();
                let mut cs = sample(&mut rng, m, k).into_vec();
                rs.sort_unstable();
                cs.sort_unstable();
                subs.push((rs, cs));
            }
        }
        CheckMode::Sampled {
            seed: opts.seed,
            samples: opts.samples,
        }
    };

    let eta_den = factorial(rows) * &eq;
    let results = par::map_items(&subs, opts.jobs, |(rs, cs)| {
        submatrix_status(a, rs, cs, &ep, &eq, &eta_den, opts.ind_max_k)
    });
    let mut ri_fail = None;
    let mut ind_fail = None;
    for ((rs, cs), (ri_ok, ind_ok)) in subs.iter().zip(&results) {
        let witness = |detail: &str| Witness {
            rows: rs.iter().map(|r| r + 1).collect(),
            cols: cs.iter().map(|c| c + 1).collect(),
            detail: detail.into(),
        };
        if !ri_ok && ri_fail.is_none() {
            ri_fail = Some(witness("|det - P| >= epsilon P"));
        }
        if *ind_ok == Some(false) && ind_fail.is_none() {
            ind_fail = Some(witness("a non-main diagonal product is >= eta P"));
        }
    }
    checks.push(check(Condition::Ri, ri_fail));
    checks.push(check(Condition::Ind, ind_fail));
    checks.sort_by_key(|c| c.condition);

    Ok(RiReport {
        epsilon: epsilon.clone(),
        sampling,
        submatrices: subs.len() as u64,
        ind_max_k: opts.ind_max_k,
        checks,
    })
}

fn check(condition: Condition, witness: Option<Witness>) -> Check {
    Check {
        condition,
        passed: witness.is_none(),
        witness,
    }
}

/// `(|det − P| < εP, every non-main ∏Δ < ηP)`; the second is `None` above
/// `ind_max_k`.
fn submatrix_status(
    a: &[Vec<BigUint>],
    rs: &[usize],
    cs: &[usize],
    ep: &BigUint,
    eq: &BigUint,
    eta_den: &BigUint,
    ind_max_k: usize,
) -> (bool, Option<bool>) {
    let k = rs.len();
    let ints: Vec<Vec<BigInt>> = rs
        .iter()
        .map(|&r| cs.iter().map(|&c| BigInt::from(a[r][c].clone())).collect())
        .collect();
    let main: BigUint = (0..k).map(|t| &a[rs[t]][cs[t]]).product();
    let det = det_integer(ints);
    let gap = (det - BigInt::from(main.clone())).magnitude().clone();
    let ri_ok = gap * eq < &main * ep;
    let ind_ok = (k <= ind_max_k).then(|| {
        let bound = &main * ep;
        (0..k).permutations(k).skip(1).all(|perm| {
            let prod: BigUint = (0..k).map(|t| &a[rs[t]][cs[perm[t]]]).product();
            prod * eta_den < bound
        })
    });
    (ri_ok, ind_ok)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Plain(String),
    Pow2 { pow2: u64, plus: String },
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    #[serde(rename = "D")]
    rows: usize,
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<ExactScalar>,
    mode: RiMode,
    entries: Vec<Vec<EntryRepr>>,
}

fn encode_entry(n: &BigUint) -> EntryRepr {
    let bits = n.bits();
    if bits <= COMPACT_BITS {
        return EntryRepr::Plain(n.to_string());
    }
    let top = bits - 1;
    let rest = n - (BigUint::one() << top);
    EntryRepr::Pow2 {
        pow2: top,
        plus: rest.to_string(),
    }
}

fn decode_entry(e: &EntryRepr) -> Result<BigUint> {
    let parse = |s: &str| {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad matrix entry {s:?}")))
    };
    let value = match e {
        EntryRepr::Plain(s) => parse(s)?,
        EntryRepr::Pow2 { pow2, plus } => (BigInt::one() << *pow2) + parse(plus)?,
    };
    value
        .to_biguint()
        .ok_or_else(|| Error::Parse("negative matrix entry".into()))
}

impl From<RIMatrix> for MatrixFile {
    fn from(mat: RIMatrix) -> Self {
        MatrixFile {
            rows: mat.rows,
            m: mat.m,
            epsilon: mat.epsilon,
            mode: mat.mode,
            entries: mat
                .entries
                .iter()
                .map(|r| r.iter().map(encode_entry).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixFile> for RIMatrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<Self> {
        let entries = f
            .entries
            .iter()
            .map(|r| r.iter().map(decode_entry).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mat = RIMatrix::from_rows(entries, f.epsilon, f.mode)?;
        if mat.rows != f.rows || mat.m != f.m {
            return Err(Error::Parse(format!(
                "matrix header says {}x{}, entries are {}x{}",
                f.rows, f.m, mat.rows, mat.m
            )));
        }
        Ok(mat)
    }
}
