//! Certificates for sign consistency and variation bounds of observability operators,
//! via compound systems whose impulse responses enumerate structured minors of `O(A,c)`.

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::poly::{self, Poly};
use crate::linalg::{lex_tuples, Backend, IndexTuple, Matrix, Rational, Scalar, Sign};
use crate::lti::spectrum::TIE_TOL;
use crate::lti::{assess, eigen_sorted, observability_matrix, ExtPosStatus, ExtPosVerdict, LtiSystem, Requirement};
use crate::signcons::{anchored_runs, k_columns_independent, Strictness};
use crate::variation::v_minus;

/// `(Ã_r, b̃, c̃_r)` with `Ã_r = A_[r]` and `c̃_r = (O_r)_[r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundSystem<T: Scalar> {
    pub system: LtiSystem<T>,
    pub r: usize,
    /// Order of the minors the response enumerates.
    pub k: usize,
    /// Column set; `None` for the normalized full-order family.
    pub beta: Option<IndexTuple>,
}

impl<T: Scalar> CompoundSystem<T> {
    /// Row set `{1..k-r} ∪ (k-r+t : k+t-1)` of the minor reproduced at time `t`.
    pub fn alpha(&self, t: usize) -> IndexTuple {
        minor_rows(self.k, self.r, t)
    }
}

fn minor_rows(k: usize, r: usize, t: usize) -> IndexTuple {
    IndexTuple::head_and_run(k + t - 1, k - r, k - r + t, r).expect("valid row set")
}

fn observable_basis<T: Scalar>(a: &Matrix<T>, c: &[T]) -> Result<Matrix<T>> {
    let n = a.rows();
    let on = observability_matrix(a, c, n)?;
    let rank = on.rank();
    if rank < n {
        return Err(Error::NotObservable { rank, n });
    }
    Ok(on)
}

fn first_row<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    m.row(0)
}

/// Full-order family `r = 1..n` with `b̃_r = (A^{n-r} O_n^{-1} [0; I_r])_[r]`; each response
/// equals the matching `n`-minor of `O` divided by `det O_n`.
pub fn thm1_systems<T: Scalar>(a: &Matrix<T>, c: &[T]) -> Result<Vec<CompoundSystem<T>>> {
    let on = observable_basis(a, c)?;
    let n = a.rows();
    let oinv = on.inverse()?;
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for r in 1..=n {
        let tail: Vec<usize> = (n - r..n).collect();
        let left = a.pow(n - r)?.matmul(&oinv.select(&all, &tail))?;
        let b = left.compound(r)?.col(0);
        let c_tilde = first_row(&observability_matrix(a, c, r)?.compound(r)?);
        let system = LtiSystem::new(a.compound(r)?, b, c_tilde)?;
        out.push(CompoundSystem { system, r, k: n, beta: None });
    }
    Ok(out)
}

/// System whose response at `t` is `det O_{α,β}` with `α = {1..k-r} ∪ (k-r+t : k+t-1)`.
pub fn thm2_system<T: Scalar>(a: &Matrix<T>, c: &[T], k: usize, r: usize, beta: &IndexTuple) -> Result<CompoundSystem<T>> {
    let on = observable_basis(a, c)?;
    compound_system_with(a, c, &on, &on.inverse()?, k, r, beta)
}

fn compound_system_with<T: Scalar>(
    a: &Matrix<T>,
    c: &[T],
    on: &Matrix<T>,
    oinv: &Matrix<T>,
    k: usize,
    r: usize,
    beta: &IndexTuple,
) -> Result<CompoundSystem<T>> {
    let n = a.rows();
    if k == 0 || k > n || r == 0 || r > k {
        return Err(Error::BadIndices(format!("need 1 <= r <= k <= n, got r = {r}, k = {k}, n = {n}")));
    }
    if beta.len() != k || beta.ground() != n {
        return Err(Error::BadIndices(format!("beta = {beta} must be a {k}-subset of 1..{n}")));
    }
    let head = k - r;
    let all: Vec<usize> = (0..n).collect();
    let tail: Vec<usize> = (head..n).collect();
    let w = a.pow(head)?.matmul(&oinv.select(&all, &tail))?.compound(r)?;
    let cols = beta.zero_based();
    let mut b = vec![T::zero(); w.rows()];
    for (q, sub) in lex_tuples(n - head, r).into_iter().enumerate() {
        let rows: Vec<usize> = (0..head).chain(sub.elems().iter().map(|&e| e + head - 1)).collect();
        let weight = on.select(&rows, &cols).det()?;
        if weight.is_zero() {
            continue;
        }
        for (i, bi) in b.iter_mut().enumerate() {
            *bi = bi.clone() + w[(i, q)].clone() * weight.clone();
        }
    }
    let c_tilde = first_row(&observability_matrix(a, c, r)?.compound(r)?);
    let system = LtiSystem::new(a.compound(r)?, b, c_tilde)?;
    Ok(CompoundSystem { system, r, k, beta: Some(beta.clone()) })
}

/// Column sets for order `k`: `{1..k-r̄} ∪ (t̄ : t̄+r̄-1)`. In non-strict mode the
/// consecutive sets starting past `k` (or the single set when `k = n`) may be checked
/// non-strictly on their `r = k` system.
pub fn beta_family(n: usize, k: usize, strict: bool) -> Vec<(IndexTuple, Strictness)> {
    anchored_runs(n, k)
        .into_iter()
        .map(|beta| {
            let relaxed = !strict
                && if k == n {
                    true
                } else {
                    2 * k <= n && beta.is_consecutive() && beta.elems()[0] > k
                };
            (beta, if relaxed { Strictness::NonStrictAllowed } else { Strictness::Strict })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Svb,
    Vb,
    KPositive,
    Vd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Observability,
    Controllability,
    HankelSufficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Certified,
    Refuted,
    Inconclusive,
}

impl Conclusion {
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::Certified => 0,
            Conclusion::Refuted => 1,
            Conclusion::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemReport {
    /// Minor order of the family this system belongs to.
    pub order: usize,
    pub r: usize,
    pub beta: IndexTuple,
    /// Responses are normalized by `det O_n`.
    pub normalized: bool,
    pub verdict: ExtPosVerdict,
    /// `g(1..)` as decimal strings.
    #[serde(skip)]
    pub samples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub order: usize,
    pub r: usize,
    pub beta: IndexTuple,
    pub t: usize,
    pub rows: IndexTuple,
    pub value: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub property: PropertyKind,
    /// Minor order `k` of the checked family.
    pub order: usize,
    pub target: Target,
    /// The operator property a `Certified` conclusion establishes.
    pub claim: String,
    pub conclusion: Conclusion,
    pub common_sign: Option<i8>,
    pub per_system: Vec<SystemReport>,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub factors: Vec<Certificate>,
}

struct Job {
    order: usize,
    r: usize,
    beta: IndexTuple,
    requirement: Requirement,
    normalized: bool,
}

struct Evaluated {
    report: SystemReport,
    first_decisive: Option<(usize, String, i8)>,
}

fn evaluate<T: Scalar>(a: &Matrix<T>, c: &[T], jobs: Vec<Job>, horizon: usize) -> Result<Vec<Evaluated>> {
    let on = observable_basis(a, c)?;
    let oinv = on.inverse()?;
    let needs_thm1 = jobs.iter().any(|j| j.normalized);
    let thm1 = if needs_thm1 { thm1_systems(a, c)? } else { Vec::new() };
    jobs.into_par_iter()
        .map(|job| {
            let sys = if job.normalized {
                thm1[job.r - 1].system.clone()
            } else {
                compound_system_with(a, c, &on, &oinv, job.order, job.r, &job.beta)?.system
            };
            let (verdict, g) = assess(&sys, job.requirement, horizon);
            let first_decisive = g.iter().enumerate().find_map(|(i, v)| match v.sign() {
                Sign::Positive => Some((i + 1, v.render(), 1)),
                Sign::Negative => Some((i + 1, v.render(), -1)),
                _ => None,
            });
            Ok(Evaluated {
                report: SystemReport {
                    order: job.order,
                    r: job.r,
                    beta: job.beta,
                    normalized: job.normalized,
                    verdict,
                    samples: g.iter().map(|v| v.render()).collect(),
                },
                first_decisive,
            })
        })
        .collect()
}

/// Jobs for the sign-consistency family of order `k`.
fn family_jobs(n: usize, k: usize, strict: bool) -> Vec<Job> {
    let mut jobs = Vec::new();
    if k == n {
        let beta = IndexTuple::consecutive(n, 1, n).expect("in range");
        for r in 1..=n {
            let requirement = if !strict && r == n {
                Requirement::NonStrict { strict_prefix: n }
            } else {
                Requirement::Strict
            };
            jobs.push(Job { order: n, r, beta: beta.clone(), requirement, normalized: true });
        }
        return jobs;
    }
    let betas = beta_family(n, k, strict);
    for r in 1..=k {
        for (beta, flag) in &betas {
            let requirement = if r == k && *flag == Strictness::NonStrictAllowed {
                Requirement::NonStrict { strict_prefix: k }
            } else {
                Requirement::Strict
            };
            jobs.push(Job { order: k, r, beta: beta.clone(), requirement, normalized: false });
        }
    }
    jobs
}

fn witness_from(e: &Evaluated, t: usize, value: String, reason: String) -> Witness {
    let rep = &e.report;
    Witness {
        order: rep.order,
        r: rep.r,
        beta: rep.beta.clone(),
        t,
        rows: minor_rows(rep.order, rep.r, t),
        value,
        reason,
    }
}

/// Outcome of checking one sign-coherent group of systems.
struct GroupOutcome {
    sign: Option<i8>,
    all_certified: bool,
    violation: Option<Witness>,
    /// Violation by a sample of the sign opposite to the group's.
    opposite: bool,
    notes: Vec<String>,
}

fn check_group(evals: &[&Evaluated], forced: Option<i8>) -> GroupOutcome {
    let mut sign = forced;
    let mut out = GroupOutcome { sign: None, all_certified: true, violation: None, opposite: false, notes: Vec::new() };
    for e in evals {
        let v = &e.report.verdict;
        if let Some((t, value, s)) = &e.first_decisive {
            match sign {
                None => sign = Some(*s),
                Some(eps) if eps != *s => {
                    if out.violation.is_none() {
                        out.violation = Some(witness_from(e, *t, value.clone(), format!("sign {s:+} against common sign {eps:+}")));
                        out.opposite = true;
                    }
                }
                _ => {}
            }
        }
        if v.status == ExtPosStatus::Violated && out.violation.is_none() {
            let fv = v.first_violation.as_ref().expect("violated verdict records the sample");
            let zero = e.report.samples.get(fv.t - 1).is_some_and(|s| s == "0");
            let reason = if zero { "vanishing minor where a strict sign is required" } else { "sign change within the response" };
            out.violation = Some(witness_from(e, fv.t, fv.value.clone(), reason.into()));
            out.opposite = !zero;
        }
        if !v.status.is_certified() {
            out.all_certified = false;
            if matches!(v.status, ExtPosStatus::VerifiedUpToHorizonOnly | ExtPosStatus::Inconclusive) {
                out.notes.push(format!(
                    "order {}, r = {}, beta = {}: {:?} after {} samples",
                    e.report.order, e.report.r, e.report.beta, v.status, v.horizon
                ));
            }
        }
    }
    out.sign = sign;
    out
}

fn new_certificate(property: PropertyKind, k: usize, claim: String) -> Certificate {
    Certificate {
        property,
        order: k,
        target: Target::Observability,
        claim,
        conclusion: Conclusion::Inconclusive,
        common_sign: None,
        per_system: Vec::new(),
        witness: None,
        notes: Vec::new(),
        factors: Vec::new(),
    }
}

fn check_order(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::RankOutOfRange { order: k, max: n });
    }
    Ok(())
}

/// Strict `k`-sign consistency of `O(A,c)`, equivalently `SVB_{k-1}`.
pub fn certify_svb<T: Scalar>(a: &Matrix<T>, c: &[T], k: usize, horizon: usize) -> Result<Certificate> {
    let n = a.rows();
    check_order(n, k)?;
    let evals = evaluate(a, c, family_jobs(n, k, true), horizon)?;
    let forced = (k == n).then_some(1);
    let g = check_group(&evals.iter().collect::<Vec<_>>(), forced);
    let mut cert = new_certificate(PropertyKind::Svb, k, format!("SVB_{}", k - 1));
    cert.notes = g.notes;
    if k == n {
        cert.notes.push("full-order family normalized by det O_n; common sign forced positive".into());
    }
    cert.conclusion = if g.violation.is_some() {
        Conclusion::Refuted
    } else if g.all_certified {
        Conclusion::Certified
    } else {
        Conclusion::Inconclusive
    };
    cert.common_sign = g.sign;
    cert.witness = g.violation;
    cert.per_system = evals.into_iter().map(|e| e.report).collect();
    Ok(cert)
}

/// Sufficient test for `VB_{k-1}`: strict checks, relaxed on the exempt column sets.
pub fn certify_vb<T: Scalar>(a: &Matrix<T>, c: &[T], k: usize, horizon: usize) -> Result<Certificate> {
    let n = a.rows();
    check_order(n, k)?;
    let evals = evaluate(a, c, family_jobs(n, k, false), horizon)?;
    let forced = (k == n).then_some(1);
    let g = check_group(&evals.iter().collect::<Vec<_>>(), forced);
    let mut cert = new_certificate(PropertyKind::Vb, k, format!("VB_{}", k - 1));
    cert.notes = g.notes;
    if k < n && 2 * k > n {
        cert.notes.push(format!("2k > n: no relaxation applies at k = {k}"));
    }
    if let Some(w) = &g.violation {
        cert.notes.push(format!("sufficient condition fails: {}", w.reason));
    }
    cert.conclusion = if g.violation.is_none() && g.all_certified {
        Conclusion::Certified
    } else {
        Conclusion::Inconclusive
    };
    cert.common_sign = g.sign;
    cert.witness = g.violation;
    cert.per_system = evals.into_iter().map(|e| e.report).collect();
    Ok(cert)
}

/// Consecutive-minor test for (strict) `k`-positivity of `O(A,c)`, hence `OVD_{k-1}`.
/// Orders `j < k` use the systems `r = j` strictly; order `k` uses them strictly or not.
pub fn certify_k_positive<T: Scalar>(a: &Matrix<T>, c: &[T], k: usize, strict: bool, horizon: usize) -> Result<Certificate> {
    let n = a.rows();
    check_order(n, k)?;
    let mut jobs = Vec::new();
    for j in 1..=k {
        let requirement = if j < k || strict { Requirement::Strict } else { Requirement::NonStrict { strict_prefix: 0 } };
        for beta in anchored_runs(n, j) {
            jobs.push(Job { order: j, r: j, beta, requirement, normalized: false });
        }
    }
    let evals = evaluate(a, c, jobs, horizon)?;
    let g = check_group(&evals.iter().collect::<Vec<_>>(), Some(1));
    let claim = if strict { format!("strictly {k}-positive, OVD_{}", k - 1) } else { format!("{k}-positive, OVD_{}", k - 1) };
    let mut cert = new_certificate(PropertyKind::KPositive, k, claim);
    cert.notes = g.notes;
    let refuted = g.violation.is_some() && (g.opposite || strict);
    cert.conclusion = if refuted {
        Conclusion::Refuted
    } else if g.violation.is_none() && g.all_certified {
        Conclusion::Certified
    } else {
        Conclusion::Inconclusive
    };
    if let (Some(w), false) = (&g.violation, refuted) {
        cert.notes.push(format!("sufficient condition fails at order {}: {}", w.order, w.reason));
    }
    cert.common_sign = g.sign;
    cert.witness = g.violation;
    cert.per_system = evals.into_iter().map(|e| e.report).collect();
    Ok(cert)
}

/// Strict sign consistency of every order `j ≤ k`, each with its own sign, which gives
/// `SR_k` and hence `VD_{k-1}`.
pub fn certify_vd<T: Scalar>(a: &Matrix<T>, c: &[T], k: usize, horizon: usize) -> Result<Certificate> {
    let n = a.rows();
    check_order(n, k)?;
    let jobs: Vec<Job> = (1..=k).flat_map(|j| family_jobs(n, j, true)).collect();
    let evals = evaluate(a, c, jobs, horizon)?;
    let mut cert = new_certificate(PropertyKind::Vd, k, format!("SR_{k}, VD_{}", k - 1));
    let mut all_certified = true;
    let mut refuting = None;
    let mut first_failure = None;
    for j in 1..=k {
        let group: Vec<&Evaluated> = evals.iter().filter(|e| e.report.order == j).collect();
        let g = check_group(&group, (j == n).then_some(1));
        cert.notes.extend(g.notes);
        all_certified &= g.all_certified && g.violation.is_none();
        if let Some(w) = g.violation {
            if g.opposite && refuting.is_none() {
                refuting = Some(w);
            } else if first_failure.is_none() {
                first_failure = Some(w);
            }
        }
        if j == k {
            cert.common_sign = g.sign;
        }
    }
    cert.conclusion = if let Some(w) = refuting {
        let hypothesis = k == n || {
            let o = observability_matrix(a, c, horizon.max(n + k))?;
            k_columns_independent(&o, k)?
        };
        if hypothesis {
            cert.witness = Some(w);
            Conclusion::Refuted
        } else {
            cert.notes.push(format!("minors of opposite sign at order {}, but some {k} columns are dependent", w.order));
            cert.witness = Some(w);
            Conclusion::Inconclusive
        }
    } else if all_certified {
        Conclusion::Certified
    } else {
        cert.witness = first_failure;
        Conclusion::Inconclusive
    };
    cert.per_system = evals.into_iter().map(|e| e.report).collect();
    Ok(cert)
}

pub fn certify<T: Scalar>(a: &Matrix<T>, c: &[T], property: PropertyKind, k: usize, horizon: usize) -> Result<Certificate> {
    match property {
        PropertyKind::Svb => certify_svb(a, c, k, horizon),
        PropertyKind::Vb => certify_vb(a, c, k, horizon),
        PropertyKind::KPositive => certify_k_positive(a, c, k, true, horizon),
        PropertyKind::Vd => certify_vd(a, c, k, horizon),
    }
}

/// Runs the observability pipeline on `(Aᵀ, bᵀ)`; sign consistency is invariant under
/// transposition, so the result applies to the controllability operator.
pub fn certify_controllability<T: Scalar>(
    a: &Matrix<T>,
    b: &[T],
    property: PropertyKind,
    k: usize,
    horizon: usize,
) -> Result<Certificate> {
    let mut cert = certify(&a.transpose(), b, property, k, horizon)?;
    cert.target = Target::Controllability;
    Ok(cert)
}

/// Sufficient test for the Hankel operator `O(A,c) C(A,b)`: both factors certified.
pub fn certify_hankel<T: Scalar>(sys: &LtiSystem<T>, property: PropertyKind, k: usize, horizon: usize) -> Result<Certificate> {
    let obs = certify(&sys.a, &sys.c, property, k, horizon)?;
    let ctrb = certify_controllability(&sys.a, &sys.b, property, k, horizon)?;
    let mut cert = new_certificate(property, k, obs.claim.clone());
    cert.target = Target::HankelSufficient;
    cert.conclusion = if obs.conclusion == Conclusion::Certified && ctrb.conclusion == Conclusion::Certified {
        Conclusion::Certified
    } else {
        Conclusion::Inconclusive
    };
    cert.notes.push("sufficient only: both factors certified implies the product property".into());
    cert.factors = vec![obs, ctrb];
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenScreen {
    pub k: usize,
    pub passes: bool,
    /// `Some(false)` when a repeated eigenvalue has a nontrivial Jordan block.
    pub diagonalizable: Option<bool>,
    /// Failure refutes strict `k`-sign consistency of every observable `O(A,c)`.
    pub refutes: bool,
    pub dominant: Vec<Complex64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = vec![Rational::from_integer(0.into()); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn diagonalizable_exact(a: &Matrix<Rational>) -> bool {
    let factors = poly::squarefree(&poly::charpoly(a));
    if factors.iter().all(|(_, m)| *m == 1) {
        return true;
    }
    let radical = factors.iter().fold(vec![Rational::from_integer(1.into())], |acc, (f, _)| poly_mul(&acc, f));
    let n = a.rows();
    let mut acc = Matrix::<Rational>::zeros(n, n);
    for coeff in radical.iter().rev() {
        acc = acc.matmul(a).expect("square").add(&Matrix::identity(n).scale(coeff)).expect("square");
    }
    acc.data().iter().all(|x| x.is_zero())
}

/// Necessary screen: the `k` dominant eigenvalues of `A` must be real and positive. Every
/// eigenvalue whose modulus ties with the `k`-th counts as dominant.
pub fn eigen_necessary_check<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<EigenScreen> {
    let spec = eigen_sorted(a)?;
    let n = spec.len();
    check_order(n, k)?;
    let mut notes = Vec::new();
    let kth = spec.eigenvalues[k - 1].norm();
    let count = spec.eigenvalues.iter().take_while(|z| z.norm() >= kth - TIE_TOL * kth.max(1.0)).count();
    if count > k {
        notes.push(format!("eigenvalues {}..{} tie in modulus with the {k}-th", k + 1, count));
    }
    let dominant: Vec<Complex64> = spec.eigenvalues[..count].to_vec();
    let scale = spec.eigenvalues[0].norm().max(1.0);
    let passes = dominant.iter().all(|z| z.im.abs() <= TIE_TOL * scale && z.re > TIE_TOL * scale);
    let diagonalizable = if spec.multiplicities.iter().all(|&m| m == 1) {
        Some(true)
    } else if T::BACKEND == Backend::Exact {
        Some(diagonalizable_exact(&a.map(|x| x.to_rational())))
    } else {
        None
    };
    if diagonalizable != Some(true) && !passes {
        notes.push("A is not known to be diagonalizable; the failure is advisory".into());
    }
    Ok(EigenScreen { k, passes, refutes: !passes && diagonalizable == Some(true), diagonalizable, dominant, notes })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationBoundReport {
    /// `v⁻(b)`.
    pub input_variation: i64,
    /// Certified upper bound on `v⁻(g)` over all `t ≥ 1`.
    pub bound: Option<i64>,
    pub certified_by: Option<(PropertyKind, usize)>,
    /// `v⁻(g(1..horizon))`.
    pub measured: i64,
    pub horizon: usize,
    /// Sign of the dominant mode of `g`, when one exists.
    pub tail_sign: Option<i8>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Bounds the sign changes of `g = O(A,c) b` using the smallest certified order.
pub fn impulse_variation_bound<T: Scalar>(sys: &LtiSystem<T>, horizon: usize) -> Result<VariationBoundReport> {
    let n = sys.dim();
    observable_basis(&sys.a, &sys.c)?;
    let vb = v_minus(&sys.b);
    let g = sys.impulse_response(horizon);
    let measured = v_minus(&g);
    let tail_sign = match crate::lti::tail_evidence(sys) {
        crate::lti::TailEvidence::Dominant { residue, .. } => Some(if residue > 0.0 { 1 } else { -1 }),
        _ => None,
    };
    let mut report = VariationBoundReport {
        input_variation: vb,
        bound: None,
        certified_by: None,
        measured,
        horizon,
        tail_sign,
        notes: Vec::new(),
    };
    if vb < 0 {
        report.bound = Some(-1);
        report.notes.push("b = 0, so g vanishes".into());
        return Ok(report);
    }
    for k in (vb as usize + 1)..=n {
        if certify_k_positive(&sys.a, &sys.c, k, false, horizon)?.conclusion == Conclusion::Certified {
            report.bound = Some(vb);
            report.certified_by = Some((PropertyKind::KPositive, k));
            break;
        }
        for property in [PropertyKind::Svb, PropertyKind::Vb] {
            if certify(&sys.a, &sys.c, property, k, horizon)?.conclusion == Conclusion::Certified {
                report.bound = Some(k as i64 - 1);
                report.certified_by = Some((property, k));
                break;
            }
        }
        if report.bound.is_some() {
            break;
        }
    }
    if let Some(bound) = report.bound {
        if measured > bound {
            report.notes.push(format!("measured variation {measured} exceeds the bound {bound}"));
        }
    } else {
        report.notes.push("no order certified".into());
    }
    Ok(report)
}
