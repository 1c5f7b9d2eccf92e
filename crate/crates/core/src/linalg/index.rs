//! Strictly increasing 1-based index tuples and their lexicographic ordering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing tuple of indices drawn from `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTuple {
    n: usize,
    elems: Vec<usize>,
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

impl IndexTuple {
    pub fn new(n: usize, elems: Vec<usize>) -> Result<Self> {
        for (pos, &e) in elems.iter().enumerate() {
            if e == 0 || e > n {
                return Err(Error::IndexOutOfRange { index: e, bound: n });
            }
            if pos > 0 && elems[pos - 1] >= e {
                return Err(Error::BadIndices(format!("{elems:?} is not strictly increasing")));
            }
        }
        Ok(Self { n, elems })
    }

    /// `(start : start+len-1)`.
    pub fn consecutive(n: usize, start: usize, len: usize) -> Result<Self> {
        Self::new(n, (start..start + len).collect())
    }

    /// `{1..head} ∪ (start : start+len-1)`; requires `start > head`.
    pub fn head_and_run(n: usize, head: usize, start: usize, len: usize) -> Result<Self> {
        if len > 0 && start <= head {
            return Err(Error::BadIndices(format!(
                "run starting at {start} overlaps the initial block 1..{head}"
            )));
        }
        let mut v: Vec<usize> = (1..=head).collect();
        v.extend(start..start + len);
        Self::new(n, v)
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.elems.iter().map(|e| e - 1).collect()
    }

    pub fn is_consecutive(&self) -> bool {
        self.elems.windows(2).all(|w| w[1] == w[0] + 1)
    }

    pub fn complement(&self) -> IndexTuple {
        let elems = (1..=self.n).filter(|i| !self.elems.contains(i)).collect();
        IndexTuple { n: self.n, elems }
    }

    /// 1-based position of this tuple among all `len()`-subsets of `1..=n` in lexicographic order.
    pub fn lex_rank(&self) -> usize {
        let r = self.elems.len();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &e) in self.elems.iter().enumerate() {
            for skipped in prev + 1..e {
                rank += binomial(self.n - skipped, r - i - 1);
            }
            prev = e;
        }
        rank + 1
    }

    /// Inverse of [`lex_rank`](Self::lex_rank).
    pub fn unrank(n: usize, r: usize, rank: usize) -> Result<Self> {
        let total = binomial(n, r);
        if rank == 0 || rank > total {
            return Err(Error::IndexOutOfRange { index: rank, bound: total });
        }
        let mut left = rank - 1;
        let mut elems = Vec::with_capacity(r);
        let mut next = 1;
        for i in 0..r {
            loop {
                let block = binomial(n - next, r - i - 1);
                if left < block {
                    break;
                }
                left -= block;
                next += 1;
            }
            elems.push(next);
            next += 1;
        }
        Ok(Self { n, elems })
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// All `r`-subsets of `1..=n` in lexicographic order.
pub fn lex_tuples(n: usize, r: usize) -> Vec<IndexTuple> {
    let mut out = Vec::with_capacity(binomial(n, r));
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=r).collect();
    loop {
        out.push(IndexTuple { n, elems: cur.clone() });
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - (r - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
