//! Sign consistency, sign regularity and total positivity of finite matrices,
//! plus the variation-bounding and variation-diminishing decisions built on them.
//!
//! Every check returns a [`CheckOutcome`]: `holds` is `Some(true)` when the property is
//! established, `Some(false)` when a witness minor refutes it, and `None` when the
//! evidence is insufficient (float noise, or a sufficient-only test that did not pass).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lex_tuples, IndexTuple, Matrix, Scalar, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    StrictlyPositive,
    StrictlyNegative,
    Nonnegative,
    Nonpositive,
    Zero,
    Mixed,
    Inconclusive,
}

impl SignVerdict {
    pub fn classify(signs: impl IntoIterator<Item = Sign>) -> Self {
        SignCounts::from_signs(signs).verdict()
    }

    /// Whether the family satisfies `≥ 0` / `≤ 0` (or `> 0` / `< 0` when `strict`).
    pub fn passes(self, strict: bool) -> bool {
        match self {
            SignVerdict::StrictlyPositive | SignVerdict::StrictlyNegative => true,
            SignVerdict::Nonnegative | SignVerdict::Nonpositive | SignVerdict::Zero => !strict,
            SignVerdict::Mixed | SignVerdict::Inconclusive => false,
        }
    }

    /// `+1` / `-1` when the verdict fixes a direction.
    pub fn epsilon(self) -> Option<i8> {
        match self {
            SignVerdict::StrictlyPositive | SignVerdict::Nonnegative => Some(1),
            SignVerdict::StrictlyNegative | SignVerdict::Nonpositive => Some(-1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SignCounts {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub indeterminate: usize,
}

impl SignCounts {
    pub fn from_signs(signs: impl IntoIterator<Item = Sign>) -> Self {
        let mut c = SignCounts::default();
        for s in signs {
            c.add(s);
        }
        c
    }

    pub fn add(&mut self, s: Sign) {
        match s {
            Sign::Positive => self.positive += 1,
            Sign::Negative => self.negative += 1,
            Sign::Zero => self.zero += 1,
            Sign::Indeterminate => self.indeterminate += 1,
        }
    }

    pub fn verdict(&self) -> SignVerdict {
        match (self.positive > 0, self.negative > 0) {
            (true, true) => SignVerdict::Mixed,
            _ if self.indeterminate > 0 => SignVerdict::Inconclusive,
            (true, false) if self.zero > 0 => SignVerdict::Nonnegative,
            (true, false) => SignVerdict::StrictlyPositive,
            (false, true) if self.zero > 0 => SignVerdict::Nonpositive,
            (false, true) => SignVerdict::StrictlyNegative,
            (false, false) => SignVerdict::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Strict,
    NonStrictAllowed,
}

/// The rule that produced a decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Every entry of the compound matrix.
    FullCompound,
    /// Consecutive minors up to the target order.
    ConsecutiveMinors,
    /// Row- and column-initial minors.
    InitialMinors,
    /// Anchored-run minor family with one common sign.
    ReducedFamily,
    /// Rank equals the order: sign pattern per column of the compound.
    RankEqualsOrderColumnSigns,
    /// Rank below the order: column signs of the rank-order compound (sufficient only).
    LowRankColumnSigns,
    /// Order below the rank and every choice of columns independent.
    IndependentColumnsSignConsistency,
    /// Order equals the column count and full column rank.
    FullColumnRankSignConsistency,
    /// Strict sign consistency of one order characterizes strict bounding.
    StrictSignConsistency,
    /// Positivity of all minors up to the order.
    TotalPositivity,
    /// Sign consistency of all orders up to the order.
    SignRegularity,
    /// No applicable characterization.
    Undecidable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorRecord {
    pub rows: IndexTuple,
    pub cols: IndexTuple,
    pub value: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub order: usize,
    pub verdict: SignVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub holds: Option<bool>,
    pub verdict: SignVerdict,
    pub epsilon: Option<i8>,
    pub rule: Rule,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub per_order: Vec<OrderVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witness: Vec<MinorRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl CheckOutcome {
    fn new(holds: Option<bool>, verdict: SignVerdict, rule: Rule) -> Self {
        CheckOutcome {
            holds,
            verdict,
            epsilon: verdict.epsilon(),
            rule,
            per_order: Vec::new(),
            witness: Vec::new(),
            notes: Vec::new(),
        }
    }
}

/// Sign tally over a stream of minors, keeping the first minor of each sign.
#[derive(Default)]
struct Scan {
    counts: SignCounts,
    first_pos: Option<MinorRecord>,
    first_neg: Option<MinorRecord>,
    first_zero: Option<MinorRecord>,
    first_indet: Option<MinorRecord>,
}

impl Scan {
    fn push<T: Scalar>(&mut self, rows: &IndexTuple, cols: &IndexTuple, value: &T) -> Sign {
        let sign = value.sign();
        self.counts.add(sign);
        let slot = match sign {
            Sign::Positive => &mut self.first_pos,
            Sign::Negative => &mut self.first_neg,
            Sign::Zero => &mut self.first_zero,
            Sign::Indeterminate => &mut self.first_indet,
        };
        if slot.is_none() {
            *slot = Some(MinorRecord {
                rows: rows.clone(),
                cols: cols.clone(),
                value: value.render(),
                sign,
            });
        }
        sign
    }

    fn verdict(&self) -> SignVerdict {
        self.counts.verdict()
    }

    /// Minors explaining why the family fails the requested sign condition.
    fn witness(&self, strict: bool) -> Vec<MinorRecord> {
        match self.verdict() {
            SignVerdict::Mixed => [&self.first_pos, &self.first_neg]
                .into_iter()
                .flatten()
                .cloned()
                .collect(),
            SignVerdict::Inconclusive => self.first_indet.iter().cloned().collect(),
            SignVerdict::Nonnegative | SignVerdict::Nonpositive | SignVerdict::Zero if strict => {
                self.first_zero.iter().cloned().collect()
            }
            _ => Vec::new(),
        }
    }
}

fn decision(verdict: SignVerdict, strict: bool) -> Option<bool> {
    if verdict.passes(strict) {
        Some(true)
    } else if verdict == SignVerdict::Inconclusive {
        None
    } else {
        Some(false)
    }
}

fn check_order<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<()> {
    let max = x.rows().min(x.cols());
    if k == 0 || k > max {
        return Err(Error::RankOutOfRange { order: k, max });
    }
    Ok(())
}

fn scan_compound<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<Scan> {
    let c = x.compound(k)?;
    let row_sets = lex_tuples(x.rows(), k);
    let col_sets = lex_tuples(x.cols(), k);
    let mut scan = Scan::default();
    for (i, rs) in row_sets.iter().enumerate() {
        for (j, cs) in col_sets.iter().enumerate() {
            scan.push(rs, cs, &c[(i, j)]);
        }
    }
    Ok(scan)
}

/// (Strict) `k`-sign consistency over the full `k`-th compound.
pub fn sign_consistent<T: Scalar>(x: &Matrix<T>, k: usize, strict: bool) -> Result<CheckOutcome> {
    check_order(x, k)?;
    let scan = scan_compound(x, k)?;
    let verdict = scan.verdict();
    let mut out = CheckOutcome::new(decision(verdict, strict), verdict, Rule::FullCompound);
    if out.holds != Some(true) {
        out.witness = scan.witness(strict);
    }
    Ok(out)
}

fn combine(decisions: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut all = Some(true);
    for d in decisions {
        match d {
            Some(false) => return Some(false),
            None => all = None,
            Some(true) => {}
        }
    }
    all
}

/// (Strict) sign consistency of every order `1..=k`.
pub fn sign_regular<T: Scalar>(x: &Matrix<T>, k: usize, strict: bool) -> Result<CheckOutcome> {
    check_order(x, k)?;
    let per: Vec<CheckOutcome> = (1..=k)
        .map(|j| sign_consistent(x, j, strict))
        .collect::<Result<_>>()?;
    let holds = combine(per.iter().map(|o| o.holds));
    let deciding = per
        .iter()
        .find(|o| o.holds == Some(false))
        .or_else(|| per.iter().find(|o| o.holds.is_none()))
        .unwrap_or(&per[k - 1]);
    let mut out = CheckOutcome::new(holds, deciding.verdict, Rule::SignRegularity);
    out.epsilon = None;
    out.witness = deciding.witness.clone();
    out.per_order = per
        .iter()
        .enumerate()
        .map(|(j, o)| OrderVerdict { order: j + 1, verdict: o.verdict })
        .collect();
    Ok(out)
}

/// Outcome of a positivity requirement over a scanned family.
fn positivity_decision(scan: &Scan, strict: bool) -> (Option<bool>, Vec<MinorRecord>) {
    let c = &scan.counts;
    if c.negative > 0 {
        return (Some(false), scan.first_neg.iter().cloned().collect());
    }
    if strict && c.zero > 0 {
        return (Some(false), scan.first_zero.iter().cloned().collect());
    }
    if c.indeterminate > 0 {
        return (None, scan.first_indet.iter().cloned().collect());
    }
    (Some(true), Vec::new())
}

/// (Strict) `k`-positivity: every minor of order `1..=k` nonnegative (positive).
pub fn k_positive<T: Scalar>(x: &Matrix<T>, k: usize, strict: bool) -> Result<CheckOutcome> {
    check_order(x, k)?;
    let mut per_order = Vec::with_capacity(k);
    let mut decisions = Vec::with_capacity(k);
    let mut witness = Vec::new();
    for j in 1..=k {
        let scan = scan_compound(x, j)?;
        let (d, w) = positivity_decision(&scan, strict);
        if witness.is_empty() && d != Some(true) {
            witness = w;
        }
        decisions.push(d);
        per_order.push(OrderVerdict { order: j, verdict: scan.verdict() });
    }
    let holds = combine(decisions);
    let verdict = match holds {
        Some(true) if strict => SignVerdict::StrictlyPositive,
        Some(true) => SignVerdict::Nonnegative,
        _ => per_order
            .iter()
            .map(|o| o.verdict)
            .find(|v| !v.passes(strict) || *v == SignVerdict::StrictlyNegative)
            .unwrap_or(SignVerdict::Inconclusive),
    };
    let mut out = CheckOutcome::new(holds, verdict, Rule::TotalPositivity);
    out.per_order = per_order;
    out.witness = witness;
    Ok(out)
}

/// Enumerates consecutive minors of order `r`: rows `(i:i+r-1)`, columns `(j:j+r-1)`.
fn consecutive_pairs(n: usize, m: usize, r: usize) -> Vec<(IndexTuple, IndexTuple)> {
    let mut out = Vec::new();
    for i in 1..=n + 1 - r {
        for j in 1..=m + 1 - r {
            out.push((
                IndexTuple::consecutive(n, i, r).expect("in range"),
                IndexTuple::consecutive(m, j, r).expect("in range"),
            ));
        }
    }
    out
}

/// Positivity checks over a list of minor families indexed by order; orders below `top`
/// must be positive, order `top` positive or nonnegative per `strict_top`.
fn graded_positivity<T: Scalar>(
    x: &Matrix<T>,
    top: usize,
    strict_top: bool,
    families: impl Fn(usize) -> Vec<(IndexTuple, IndexTuple)>,
    rule: Rule,
) -> Result<CheckOutcome> {
    let mut per_order = Vec::with_capacity(top);
    let mut refuted: Option<Vec<MinorRecord>> = None;
    let mut blocked: Option<Vec<MinorRecord>> = None;
    for r in 1..=top {
        let mut scan = Scan::default();
        for (rows, cols) in families(r) {
            let v = x.minor(&rows, &cols)?;
            scan.push(&rows, &cols, &v);
        }
        per_order.push(OrderVerdict { order: r, verdict: scan.verdict() });
        let need_strict = r < top || strict_top;
        let c = scan.counts;
        if c.negative > 0 {
            refuted.get_or_insert_with(|| scan.first_neg.iter().cloned().collect());
        } else if need_strict && c.zero > 0 {
            // A zero minor refutes strict positivity; below the top order it only blocks the certificate.
            if strict_top {
                refuted.get_or_insert_with(|| scan.first_zero.iter().cloned().collect());
            } else {
                blocked.get_or_insert_with(|| scan.first_zero.iter().cloned().collect());
            }
        } else if c.indeterminate > 0 {
            blocked.get_or_insert_with(|| scan.first_indet.iter().cloned().collect());
        }
    }
    let (holds, witness) = match (refuted, blocked) {
        (Some(w), _) => (Some(false), w),
        (None, Some(w)) => (None, w),
        (None, None) => (Some(true), Vec::new()),
    };
    let verdict = match holds {
        Some(true) if strict_top => SignVerdict::StrictlyPositive,
        Some(true) => SignVerdict::Nonnegative,
        Some(false) if witness.iter().any(|w| w.sign == Sign::Negative) => {
            if per_order.iter().any(|o| o.verdict == SignVerdict::Mixed) {
                SignVerdict::Mixed
            } else {
                SignVerdict::Nonpositive
            }
        }
        Some(false) => SignVerdict::Nonnegative,
        None => SignVerdict::Inconclusive,
    };
    let mut out = CheckOutcome::new(holds, verdict, rule);
    out.per_order = per_order;
    out.witness = witness;
    Ok(out)
}

/// Sufficient test for (strict) `k`-positivity from consecutive minors only. In the strict
/// case the test is also necessary.
pub fn consecutive_certificate<T: Scalar>(
    x: &Matrix<T>,
    k: usize,
    strict_top: bool,
) -> Result<CheckOutcome> {
    check_order(x, k)?;
    let (n, m) = x.shape();
    graded_positivity(x, k, strict_top, |r| consecutive_pairs(n, m, r), Rule::ConsecutiveMinors)
}

/// Row-initial minors (rows `(1:j)`, consecutive columns) and column-initial minors
/// (columns `(1:j)`, consecutive rows) of order `j`.
fn initial_pairs(n: usize, m: usize, j: usize) -> Vec<(IndexTuple, IndexTuple)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let head_rows = IndexTuple::consecutive(n, 1, j).expect("in range");
    let head_cols = IndexTuple::consecutive(m, 1, j).expect("in range");
    for s in 1..=m + 1 - j {
        let pair = (head_rows.clone(), IndexTuple::consecutive(m, s, j).expect("in range"));
        if seen.insert(pair.clone()) {
            out.push(pair);
        }
    }
    for s in 1..=n + 1 - j {
        let pair = (IndexTuple::consecutive(n, s, j).expect("in range"), head_cols.clone());
        if seen.insert(pair.clone()) {
            out.push(pair);
        }
    }
    out
}

/// Initial-minor test for total positivity. With `strict_top` it decides strict total
/// positivity; otherwise top-order initial minors may vanish and a pass certifies total
/// positivity with every lower-order minor positive.
pub fn initial_minor_certificate<T: Scalar>(x: &Matrix<T>, strict_top: bool) -> Result<CheckOutcome> {
    let (n, m) = x.shape();
    let top = n.min(m);
    if top == 0 {
        return Err(Error::SizeMismatch("empty matrix".into()));
    }
    graded_positivity(x, top, strict_top, |j| initial_pairs(n, m, j), Rule::InitialMinors)
}

/// Result of the transform that maps the top-order minors of a tall matrix onto all minors
/// of a smaller matrix.
#[derive(Debug, Clone)]
pub struct PenaTransform<T: Scalar> {
    /// `X_{(m+1:n),(1:m)} · X_{(1:m),(1:m)}^{-1} · K`, size `(n-m) × m`.
    pub c: Matrix<T>,
    pub head_det: T,
    pub head_sign: Sign,
}

impl<T: Scalar> PenaTransform<T> {
    /// Row set `γ` of the top-order minor of `X` that corresponds to `det C[α, β]`.
    pub fn gamma(&self, alpha: &IndexTuple, beta: &IndexTuple) -> Result<IndexTuple> {
        pena_gamma(self.c.rows() + self.c.cols(), self.c.cols(), alpha, beta)
    }
}

/// `K` with `k_ij = (-1)^(j-1)` on the anti-diagonal `i + j = m + 1`.
pub fn pena_k<T: Scalar>(m: usize) -> Matrix<T> {
    Matrix::from_fn(m, m, |i, j| {
        if i + j + 1 == m {
            if j % 2 == 0 {
                T::one()
            } else {
                -T::one()
            }
        } else {
            T::zero()
        }
    })
}

pub fn pena_transform<T: Scalar>(x: &Matrix<T>) -> Result<PenaTransform<T>> {
    let (n, m) = x.shape();
    if n <= m {
        return Err(Error::PreconditionViolated(format!(
            "needs more rows than columns, got {n}x{m}"
        )));
    }
    let head_idx: Vec<usize> = (0..m).collect();
    let tail_idx: Vec<usize> = (m..n).collect();
    let head = x.select(&head_idx, &head_idx);
    let head_det = head.det()?;
    let head_sign = head_det.sign();
    if !head_sign.is_strict() {
        return Err(Error::SingularLeadingBlock);
    }
    let inv = head.inverse().map_err(|_| Error::SingularLeadingBlock)?;
    let c = x.select(&tail_idx, &head_idx).matmul(&inv)?.matmul(&pena_k(m))?;
    Ok(PenaTransform { c, head_det, head_sign })
}

/// `γ` for an `n × m` matrix from `α ⊂ (1:n-m)` and `β ⊂ (1:m)` of equal size `r ≥ 1`.
pub fn pena_gamma(n: usize, m: usize, alpha: &IndexTuple, beta: &IndexTuple) -> Result<IndexTuple> {
    let r = alpha.len();
    if r == 0 || r != beta.len() || r > m.min(n - m) {
        return Err(Error::BadIndices(format!("α={alpha}, β={beta} for a {n}x{m} matrix")));
    }
    if alpha.elems().iter().any(|&a| a > n - m) || beta.elems().iter().any(|&b| b > m) {
        return Err(Error::BadIndices(format!("α={alpha}, β={beta} out of range")));
    }
    let comp = IndexTuple::new(m, beta.elems().to_vec())?.complement();
    let mut gamma = vec![0; m];
    for (j, &cb) in comp.elems().iter().enumerate() {
        gamma[m - r - 1 - j] = m + 1 - cb;
    }
    for (i, &a) in alpha.elems().iter().enumerate() {
        gamma[m - r + i] = m + a;
    }
    IndexTuple::new(n, gamma)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorPair {
    pub rows: IndexTuple,
    pub cols: IndexTuple,
    pub strictness: Strictness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorFamily {
    pub pairs: Vec<MinorPair>,
}

/// `{1..k-r} ∪ (t:t+r-1)` for `r ∈ 1..=k`, `t ∈ (k-r+1 : len-r+1)`, without repeats.
pub fn anchored_runs(len: usize, k: usize) -> Vec<IndexTuple> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in 1..=k {
        for t in k - r + 1..=len + 1 - r {
            if let Ok(tuple) = IndexTuple::head_and_run(len, k - r, t, r) {
                if seen.insert(tuple.clone()) {
                    out.push(tuple);
                }
            }
        }
    }
    out
}

/// Starting index of a tuple if it is a consecutive run.
fn run_start(t: &IndexTuple) -> Option<usize> {
    t.is_consecutive().then(|| t.elems()[0])
}

/// Minor family whose common sign decides strict `k`-sign consistency of an `n × m`
/// matrix (strict mode) or certifies `k`-sign consistency (non-strict mode).
pub fn reduced_family(n: usize, m: usize, k: usize, strict: bool) -> Result<MinorFamily> {
    if !(n > m && m >= k && k >= 1) {
        return Err(Error::PreconditionViolated(format!(
            "needs rows > cols >= order >= 1, got rows={n}, cols={m}, order={k}"
        )));
    }
    if !strict {
        if k == m && n < 2 * m {
            return Err(Error::PreconditionViolated(format!(
                "non-strict family of full order needs rows >= 2*cols, got rows={n}, cols={m}"
            )));
        }
        if k < m && 2 * k > m {
            return Err(Error::PreconditionViolated(format!(
                "non-strict family needs 2*order <= cols, got order={k}, cols={m}"
            )));
        }
    }
    let alphas = anchored_runs(n, k);
    let betas = anchored_runs(m, k);
    let exempt = |a: &IndexTuple, b: &IndexTuple| -> bool {
        if strict || a.len() != k {
            return false;
        }
        let Some(ta) = run_start(a) else { return false };
        if ta < k + 1 {
            return false;
        }
        if k == m {
            return true;
        }
        matches!(run_start(b), Some(tb) if tb >= k + 1)
    };
    let mut pairs = Vec::with_capacity(alphas.len() * betas.len());
    for a in &alphas {
        for b in &betas {
            let strictness = if exempt(a, b) { Strictness::NonStrictAllowed } else { Strictness::Strict };
            pairs.push(MinorPair { rows: a.clone(), cols: b.clone(), strictness });
        }
    }
    Ok(MinorFamily { pairs })
}

/// Evaluates only the reduced family. Strict mode decides strict `k`-sign consistency;
/// non-strict mode is a sufficient test for `k`-sign consistency.
pub fn reduced_check<T: Scalar>(x: &Matrix<T>, k: usize, strict: bool) -> Result<CheckOutcome> {
    let family = reduced_family(x.rows(), x.cols(), k, strict)?;
    let mut strict_scan = Scan::default();
    let mut loose_scan = Scan::default();
    let mut all = Scan::default();
    for p in &family.pairs {
        let v = x.minor(&p.rows, &p.cols)?;
        all.push(&p.rows, &p.cols, &v);
        match p.strictness {
            Strictness::Strict => strict_scan.push(&p.rows, &p.cols, &v),
            Strictness::NonStrictAllowed => loose_scan.push(&p.rows, &p.cols, &v),
        };
    }
    let mut out = if all.verdict() == SignVerdict::Mixed {
        // Two minors of opposite strict sign refute sign consistency outright.
        let mut o = CheckOutcome::new(Some(false), SignVerdict::Mixed, Rule::ReducedFamily);
        o.witness = all.witness(true);
        o
    } else if all.counts.indeterminate > 0 {
        let mut o = CheckOutcome::new(None, SignVerdict::Inconclusive, Rule::ReducedFamily);
        o.witness = all.witness(true);
        o
    } else {
        let sv = strict_scan.verdict();
        match sv {
            SignVerdict::StrictlyPositive | SignVerdict::StrictlyNegative => {
                let verdict = if strict {
                    sv
                } else if sv == SignVerdict::StrictlyPositive {
                    SignVerdict::Nonnegative
                } else {
                    SignVerdict::Nonpositive
                };
                CheckOutcome::new(Some(true), verdict, Rule::ReducedFamily)
            }
            _ => {
                // Some required-strict minor vanished: decisive only in strict mode.
                let holds = if strict { Some(false) } else { None };
                let mut o = CheckOutcome::new(holds, all.verdict(), Rule::ReducedFamily);
                o.witness = strict_scan.witness(true);
                o
            }
        }
    };
    if !strict && loose_scan.counts.zero > 0 {
        out.notes.push(format!(
            "{} minors exempt from strictness vanish",
            loose_scan.counts.zero
        ));
    }
    Ok(out)
}

fn check_tall<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<()> {
    let (n, m) = x.shape();
    if k == 0 || k > m {
        return Err(Error::RankOutOfRange { order: k, max: m });
    }
    if n <= m {
        return Err(Error::PreconditionViolated(format!(
            "needs more rows than columns, got {n}x{m}"
        )));
    }
    Ok(())
}

/// Every set of `k` columns is linearly independent: no zero column in the `k`-th compound
/// and full rank of every `k`-column submatrix.
pub fn k_columns_independent<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<bool> {
    check_order(x, k)?;
    let c = x.compound(k)?;
    for j in 0..c.cols() {
        if (0..c.rows()).all(|i| c[(i, j)].is_negligible(c.max_abs())) {
            return Ok(false);
        }
    }
    let all_rows: Vec<usize> = (0..x.rows()).collect();
    for cols in lex_tuples(x.cols(), k) {
        if x.select(&all_rows, &cols.zero_based()).rank() < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Each column of the `r`-th compound carries a single sign (zeros allowed).
fn compound_columns_single_signed<T: Scalar>(x: &Matrix<T>, r: usize) -> Result<CheckOutcome> {
    let c = x.compound(r)?;
    let row_sets = lex_tuples(x.rows(), r);
    let col_sets = lex_tuples(x.cols(), r);
    let mut holds = Some(true);
    let mut witness = Vec::new();
    for (j, cs) in col_sets.iter().enumerate() {
        let mut scan = Scan::default();
        for (i, rs) in row_sets.iter().enumerate() {
            scan.push(rs, cs, &c[(i, j)]);
        }
        match scan.verdict() {
            SignVerdict::Mixed => {
                holds = Some(false);
                witness = scan.witness(false);
                break;
            }
            SignVerdict::Inconclusive => {
                holds = None;
                if witness.is_empty() {
                    witness = scan.witness(false);
                }
            }
            _ => {}
        }
    }
    let verdict = match holds {
        Some(true) => SignVerdict::classify(c.signs()),
        Some(false) => SignVerdict::Mixed,
        None => SignVerdict::Inconclusive,
    };
    let mut out = CheckOutcome::new(holds, verdict, Rule::RankEqualsOrderColumnSigns);
    out.epsilon = None;
    out.witness = witness;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VbReport {
    pub order: usize,
    pub rank: usize,
    /// Bounding of variation by `order - 1` with the lower count on outputs.
    pub vb: CheckOutcome,
    /// Bounding with the upper count on outputs.
    pub svb: CheckOutcome,
}

/// Decides whether `x` (more rows than columns) maps inputs with at most `k-1` sign
/// changes to outputs with at most `k-1` sign changes.
pub fn vb_matrix_check<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<VbReport> {
    check_tall(x, k)?;
    let m = x.cols();
    let rank = x.rank();
    let mut svb = sign_consistent(x, k, true)?;
    svb.rule = Rule::StrictSignConsistency;

    let mut vb = if rank == 0 {
        let mut o = CheckOutcome::new(Some(true), SignVerdict::Zero, Rule::LowRankColumnSigns);
        o.notes.push("zero matrix: every output is the zero vector".into());
        o
    } else if rank < k {
        let mut o = compound_columns_single_signed(x, rank)?;
        o.rule = Rule::LowRankColumnSigns;
        if o.holds == Some(true) {
            o.notes.push(format!("outputs have at most {} sign changes", rank - 1));
        } else {
            o.holds = None;
            o.notes.push("column sign test is only sufficient below the order".into());
        }
        o
    } else if rank == k && k < m {
        compound_columns_single_signed(x, k)?
    } else if k == m {
        let mut o = sign_consistent(x, k, false)?;
        o.rule = Rule::FullColumnRankSignConsistency;
        o
    } else if k_columns_independent(x, k)? {
        let mut o = sign_consistent(x, k, false)?;
        o.rule = Rule::IndependentColumnsSignConsistency;
        o
    } else {
        let sc = sign_consistent(x, k, false)?;
        let mut o = CheckOutcome::new(None, sc.verdict, Rule::Undecidable);
        o.notes.push("some set of columns of the order's size is dependent".into());
        o
    };
    if svb.holds == Some(true) && vb.holds != Some(true) {
        vb.holds = Some(true);
        vb.rule = Rule::StrictSignConsistency;
        vb.witness.clear();
        vb.notes.push("implied by strict bounding".into());
    }
    Ok(VbReport { order: k, rank, vb, svb })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VdReport {
    pub order: usize,
    pub rank: usize,
    /// Order-preserving diminishing, decided by `k`-positivity.
    pub ovd: CheckOutcome,
    /// Diminishing of every order below `k`.
    pub vd: CheckOutcome,
}

/// Variation diminishing up to order `k-1`. Fails with `HypothesisNotMet` when neither
/// `k`-positivity holds nor the independence hypothesis for sign regularity is met.
pub fn vd_matrix_check<T: Scalar>(x: &Matrix<T>, k: usize) -> Result<VdReport> {
    let (n, m) = x.shape();
    if n < m {
        return Err(Error::PreconditionViolated(format!(
            "needs at least as many rows as columns, got {n}x{m}"
        )));
    }
    check_order(x, k)?;
    let rank = x.rank();
    let ovd = k_positive(x, k, false)?;
    let vd = if ovd.holds == Some(true) {
        let mut o = ovd.clone();
        o.notes.push("order-preserving diminishing implies diminishing".into());
        o
    } else if rank > k && k_columns_independent(x, k)? {
        sign_regular(x, k, false)?
    } else {
        return Err(Error::HypothesisNotMet(format!(
            "matrix is not {k}-positive, and rank {rank} > {k} with independent {k}-column sets fails"
        )));
    };
    Ok(VdReport { order: k, rank, ovd, vd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    type Q = Matrix<Rational>;

    fn q(rows: &[&[i64]]) -> Q {
        Q::from_i64_rows(rows).unwrap()
    }

    fn vander() -> Q {
        q(&[&[1, 1], &[1, 2], &[1, 3], &[1, 4]])
    }

    fn t(n: usize, v: &[usize]) -> IndexTuple {
        IndexTuple::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn classify_counts() {
        use Sign::*;
        assert_eq!(SignVerdict::classify([Positive, Positive]), SignVerdict::StrictlyPositive);
        assert_eq!(SignVerdict::classify([Positive, Zero]), SignVerdict::Nonnegative);
        assert_eq!(SignVerdict::classify([Negative, Zero]), SignVerdict::Nonpositive);
        assert_eq!(SignVerdict::classify([Zero]), SignVerdict::Zero);
        assert_eq!(SignVerdict::classify([Positive, Negative, Indeterminate]), SignVerdict::Mixed);
        assert_eq!(SignVerdict::classify([Positive, Indeterminate]), SignVerdict::Inconclusive);
    }

    #[test]
    fn sign_consistency_examples() {
        let sc = sign_consistent(&vander(), 2, true).unwrap();
        assert_eq!(sc.verdict, SignVerdict::StrictlyPositive);
        assert_eq!(sc.holds, Some(true));
        let id = sign_consistent(&Q::identity(3), 1, false).unwrap();
        assert_eq!(id.verdict, SignVerdict::Nonnegative);
        assert_eq!(id.holds, Some(true));
        let strict_id = sign_consistent(&Q::identity(3), 1, true).unwrap();
        assert_eq!(strict_id.holds, Some(false));
        assert_eq!(strict_id.witness.len(), 1);
        assert!(sign_consistent(&vander(), 3, true).is_err());
    }

    #[test]
    fn regularity_and_positivity() {
        assert_eq!(sign_regular(&vander(), 2, true).unwrap().holds, Some(true));
        assert_eq!(sign_regular(&Q::identity(2), 2, false).unwrap().holds, Some(true));
        assert_eq!(k_positive(&vander(), 2, true).unwrap().holds, Some(true));
        let rot = q(&[&[1, -1], &[1, 1]]);
        let kp = k_positive(&rot, 1, false).unwrap();
        assert_eq!(kp.holds, Some(false));
        assert_eq!(kp.witness[0].sign, Sign::Negative);
        assert_eq!(k_positive(&Q::identity(3), 3, false).unwrap().holds, Some(true));
    }

    #[test]
    fn consecutive_and_initial_certificates() {
        assert_eq!(consecutive_certificate(&vander(), 2, true).unwrap().holds, Some(true));
        assert_eq!(consecutive_certificate(&q(&[&[1, -1], &[1, 1]]), 1, false).unwrap().holds, Some(false));
        assert_eq!(initial_minor_certificate(&vander(), true).unwrap().holds, Some(true));
        let id = initial_minor_certificate(&Q::identity(2), true).unwrap();
        assert_eq!(id.holds, Some(false));
        assert_eq!(id.witness[0].value, "0");
        let neg_first_col = q(&[&[1, 2], &[-1, 3], &[2, 5]]);
        assert_eq!(initial_minor_certificate(&neg_first_col, false).unwrap().holds, Some(false));
    }

    #[test]
    fn pena_transform_of_the_vandermonde_example() {
        let p = pena_transform(&vander()).unwrap();
        assert_eq!(pena_k::<Rational>(2), q(&[&[0, -1], &[1, 0]]));
        assert_eq!(p.c, q(&[&[2, 1], &[3, 2]]));
        assert_eq!(p.head_sign, Sign::Positive);
        assert_eq!(p.c.det().unwrap(), Rational::from_integer(1.into()));
        let g = p.gamma(&t(2, &[2]), &t(2, &[1])).unwrap();
        assert_eq!(g.elems(), &[1, 4]);
        assert_eq!(
            vander().minor(&g, &t(2, &[1, 2])).unwrap(),
            p.head_det.clone() * p.c[(1, 0)].clone()
        );
        let singular_head = q(&[&[1, 1], &[1, 1], &[1, 3]]);
        assert_eq!(pena_transform(&singular_head).unwrap_err(), Error::SingularLeadingBlock);
    }

    #[test]
    fn pena_with_identity_head() {
        let x = q(&[&[1, 0], &[0, 1], &[4, 5], &[6, 7]]);
        let p = pena_transform(&x).unwrap();
        let tail = q(&[&[4, 5], &[6, 7]]);
        assert_eq!(p.c, tail.matmul(&pena_k(2)).unwrap());
    }

    #[test]
    fn reduced_family_shapes() {
        let f = reduced_family(4, 2, 2, true).unwrap();
        let rows: Vec<String> = f.pairs.iter().map(|p| p.rows.to_string()).collect();
        assert_eq!(rows, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{3,4}"]);
        assert!(f.pairs.iter().all(|p| p.cols.elems() == [1, 2]));

        let k1 = reduced_family(4, 3, 1, true).unwrap();
        assert_eq!(k1.pairs.len(), 12);

        let f = reduced_family(8, 4, 2, false).unwrap();
        for p in &f.pairs {
            let exempt = p.rows.is_consecutive()
                && p.rows.elems()[0] >= 3
                && p.cols.elems() == [3, 4];
            assert_eq!(p.strictness == Strictness::NonStrictAllowed, exempt, "{p:?}");
        }
        assert_eq!(
            f.pairs.iter().filter(|p| p.strictness == Strictness::NonStrictAllowed).count(),
            5
        );
        assert!(reduced_family(3, 2, 2, false).is_err());
        assert!(reduced_family(4, 2, 2, false).is_ok());
        assert!(reduced_family(6, 3, 2, false).is_err());
        assert!(reduced_family(3, 3, 2, true).is_err());
    }

    #[test]
    fn reduced_check_examples() {
        let r = reduced_check(&vander(), 2, true).unwrap();
        assert_eq!(r.verdict, SignVerdict::StrictlyPositive);
        assert_eq!(r.epsilon, Some(1));
        let mixed = q(&[&[11, 1, -55], &[7, 5, -27], &[6, 4, -19], &[1, 1, 1]]);
        assert_eq!(reduced_check(&mixed, 1, true).unwrap().verdict, SignVerdict::Mixed);
    }

    #[test]
    fn vb_decisions() {
        let rank_one = q(&[&[1, -1], &[2, -2], &[3, -3]]);
        let r = vb_matrix_check(&rank_one, 1).unwrap();
        assert_eq!(r.vb.holds, Some(true));
        assert_eq!(r.vb.rule, Rule::RankEqualsOrderColumnSigns);

        let bad = q(&[&[1, -1], &[-1, 1], &[1, -1]]);
        let r = vb_matrix_check(&bad, 1).unwrap();
        assert_eq!(r.vb.holds, Some(false));

        let r = vb_matrix_check(&vander(), 2).unwrap();
        assert_eq!(r.svb.holds, Some(true));
        assert_eq!(r.vb.holds, Some(true));
        assert_eq!(r.vb.rule, Rule::FullColumnRankSignConsistency);

        let r = vb_matrix_check(&vander(), 1).unwrap();
        assert_eq!(r.vb.rule, Rule::IndependentColumnsSignConsistency);
        assert_eq!(r.vb.holds, Some(true));
    }

    #[test]
    fn vd_decisions() {
        let r = vd_matrix_check(&vander(), 2).unwrap();
        assert_eq!(r.vd.holds, Some(true));
        assert_eq!(r.ovd.holds, Some(true));
        let mixed = q(&[&[1, -1], &[1, 2], &[3, 1]]);
        let r = vd_matrix_check(&mixed, 1).unwrap();
        assert_eq!(r.vd.holds, Some(false));
        assert_eq!(r.ovd.holds, Some(false));
    }
}
