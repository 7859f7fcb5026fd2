//! Block-size bookkeeping for the quotient and restricted decompositions.

use crate::error::{Error, Result};
use crate::matcore::{rank_with_tol, CMatrix, RankReport};

/// The six ranks that determine a restricted decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ranks {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `rank [A B]`
    pub ab: usize,
    /// `rank [A; C]`
    pub ac: usize,
    /// `rank [A B; C 0]`
    pub abc: usize,
}

impl Ranks {
    pub fn from_reports(r: [&RankReport; 6]) -> Self {
        Ranks { a: r[0].rank, b: r[1].rank, c: r[2].rank, ab: r[3].rank, ac: r[4].rank, abc: r[5].rank }
    }

    /// Numerical ranks of `A`, `B`, `C` and the three composite matrices.
    pub fn of(a: &CMatrix, b: &CMatrix, c: &CMatrix, tol_rel: Option<f64>) -> Result<Self> {
        let (p, q) = a.shape();
        if b.rows() != p {
            return Err(Error::DimensionMismatch { what: "rows of B", expected: p, found: b.rows() });
        }
        if c.cols() != q {
            return Err(Error::DimensionMismatch { what: "columns of C", expected: q, found: c.cols() });
        }
        let ab = a.hstack(b);
        let ac = a.vstack(c);
        let abc = ab.vstack(&c.hstack(&CMatrix::zeros(c.rows(), b.cols())));
        let r = |m: &CMatrix| rank_with_tol(m, tol_rel).rank;
        Ok(Ranks { a: r(a), b: r(b), c: r(c), ab: r(&ab), ac: r(&ac), abc: r(&abc) })
    }
}

/// Block sizes of the quotient decomposition of `(A, C)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QsvdPartition {
    pub p1: usize,
    pub p2: usize,
    pub p3: usize,
    pub q1: usize,
    pub q2: usize,
    pub q3: usize,
    pub q4: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl QsvdPartition {
    /// From `rank A`, `rank C` and `rank [A; C]`.
    pub fn from_ranks(p: usize, q: usize, n: usize, r_a: usize, r_c: usize, r_ac: usize) -> Result<Self> {
        let p1 = signed("p1 = rA + rC - rAC", r_a as i64 + r_c as i64 - r_ac as i64)?;
        let p2 = signed("p2 = rAC - rC", r_ac as i64 - r_c as i64)?;
        let p3 = signed("p3 = p - rA", p as i64 - r_a as i64)?;
        let q1 = signed("q1 = q - rAC", q as i64 - r_ac as i64)?;
        let q2 = signed("q2 = rAC - rA", r_ac as i64 - r_a as i64)?;
        let n3 = signed("n3 = n - rC", n as i64 - r_c as i64)?;
        Ok(QsvdPartition { p1, p2, p3, q1, q2, q3: p1, q4: p2, n1: q2, n2: p1, n3 })
    }

    pub fn p(&self) -> usize {
        self.p1 + self.p2 + self.p3
    }

    pub fn q(&self) -> usize {
        self.q1 + self.q2 + self.q3 + self.q4
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2 + self.n3
    }

    pub fn is_consistent(&self) -> bool {
        self.n2 == self.p1 && self.p1 == self.q3 && self.n1 == self.q2 && self.p2 == self.q4
    }

    /// The same sizes seen as a restricted decomposition with `B = I`.
    pub fn to_rsvd(&self) -> RsvdPartition {
        RsvdPartition {
            p: [self.p1, self.p2, 0, 0, self.p3, 0],
            q: [self.q1, self.q2, self.q3, self.q4, 0, 0],
            m: [self.p1, self.p2, 0, self.p3],
            n: [self.n1, self.n2, 0, self.n3],
        }
    }
}

/// Block sizes `p1..p6`, `q1..q6`, `m1..m4`, `n1..n4` of the restricted
/// decomposition (stored zero-based: `p[0]` is `p1`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RsvdPartition {
    pub p: [usize; 6],
    pub q: [usize; 6],
    pub m: [usize; 4],
    pub n: [usize; 4],
}

fn signed(identity: &'static str, value: i64) -> Result<usize> {
    if value < 0 {
        return Err(Error::Inconsistent { identity, value });
    }
    Ok(value as usize)
}

impl RsvdPartition {
    /// Ordinary SVD of a `p × q` matrix of rank `r` (`B = I`, `C = I`).
    pub fn svd(p: usize, q: usize, r: usize) -> Self {
        RsvdPartition {
            p: [r, 0, 0, 0, p - r, 0],
            q: [0, q - r, r, 0, 0, 0],
            m: [r, 0, 0, p - r],
            n: [q - r, r, 0, 0],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.p.iter().sum(), self.q.iter().sum(), self.m.iter().sum(), self.n.iter().sum())
    }

    /// Every side identity of the decomposition, given the outer dimensions.
    pub fn is_consistent(&self) -> bool {
        let (p, q, m, n) = (self.p, self.q, self.m, self.n);
        p[0] == q[2]
            && p[1] == q[3]
            && p[2] == q[4]
            && p[3] == q[5]
            && n[0] == q[1]
            && m[3] == p[4]
            && n[1] == p[0]
            && m[0] == p[0]
            && n[2] == p[2]
            && m[1] == p[1]
    }

    /// Ranks implied by the block sizes.
    pub fn ranks(&self) -> Ranks {
        let (p, q, m, n) = (self.p, self.q, self.m, self.n);
        let r_a = p[0] + p[1] + p[2] + p[3];
        let r_b = m[0] + m[1] + m[3];
        let r_c = n[0] + n[1] + n[2];
        let r_ab = p[0] + p[1] + p[2] + p[3] + p[4];
        let r_ac = q[1] + q[2] + q[3] + q[4] + q[5];
        Ranks { a: r_a, b: r_b, c: r_c, ab: r_ab, ac: r_ac, abc: p[3] + r_b + r_c }
    }
}

/// Derives the restricted partition from the six ranks; fails on the first
/// identity that would go negative.
pub fn partition_from_ranks(p: usize, q: usize, m: usize, n: usize, r: Ranks) -> Result<RsvdPartition> {
    let (ra, rb, rc, rab, rac, rabc) =
        (r.a as i64, r.b as i64, r.c as i64, r.ab as i64, r.ac as i64, r.abc as i64);
    let p1 = signed("p1 = rABC + rA - rAB - rAC", rabc + ra - rab - rac)?;
    let p2 = signed("p2 = rAC + rB - rABC", rac + rb - rabc)?;
    let p3 = signed("p3 = rAB + rC - rABC", rab + rc - rabc)?;
    let p4 = signed("p4 = rABC - rB - rC", rabc - rb - rc)?;
    let p5 = signed("p5 = rAB - rA", rab - ra)?;
    let q2 = signed("q2 = rAC - rA", rac - ra)?;
    let p6 = signed("p6 = p - rAB", p as i64 - rab)?;
    let q1 = signed("q1 = q - rAC", q as i64 - rac)?;
    let n4 = signed("n4 = n - rC", n as i64 - rc)?;
    let m3 = signed("m3 = m - rB", m as i64 - rb)?;
    let part = RsvdPartition {
        p: [p1, p2, p3, p4, p5, p6],
        q: [q1, q2, p1, p2, p3, p4],
        m: [p1, p2, m3, p5],
        n: [q2, p1, p3, n4],
    };
    let dims = part.dims();
    if dims != (p, q, m, n) {
        let found = [dims.0, dims.1, dims.2, dims.3];
        let expected = [p, q, m, n];
        let k = (0..4).find(|&k| found[k] != expected[k]).unwrap_or(0);
        let identity = ["sum of p blocks", "sum of q blocks", "sum of m blocks", "sum of n blocks"][k];
        return Err(Error::Inconsistent { identity, value: found[k] as i64 - expected[k] as i64 });
    }
    Ok(part)
}
