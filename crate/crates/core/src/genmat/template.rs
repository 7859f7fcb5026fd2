//! Small problems with prescribed block sizes whose entries are exact in
//! binary64, so that rank deficiencies survive rounding.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::kcf::{QsvdPartition, RsvdPartition};
use crate::matcore::{singular_values, CMatrix, RMatrix};
use crate::pencil::{
    build_aug_qsvd, build_aug_rsvd, build_aug_svd, build_cpf_qsvd, build_cpf_rsvd, build_cpf_svd, build_sq_qsvd,
    build_sq_svd, Formulation, Pencil,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Svd,
    Qsvd,
    Rsvd,
}

impl StructureKind {
    pub fn formulations(self) -> &'static [Formulation] {
        match self {
            StructureKind::Svd => &[Formulation::SqSvd, Formulation::AugSvd, Formulation::CpfSvd],
            StructureKind::Qsvd => &[Formulation::SqQsvd, Formulation::AugQsvd, Formulation::CpfQsvd],
            StructureKind::Rsvd => &[Formulation::AugRsvd, Formulation::CpfRsvd],
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureTemplate {
    pub kind: StructureKind,
    pub a: CMatrix,
    /// The identity for the SVD and QSVD kinds.
    pub b: CMatrix,
    /// The identity for the SVD kind.
    pub c: CMatrix,
    pub partition: RsvdPartition,
    /// One value per `p1`.
    pub sigmas: Vec<f64>,
}

const ALPHAS: [f64; 5] = [0.5, 0.75, 1.0, 1.25, 1.5];
const BETAS: [f64; 2] = [0.5, 1.0];
const GAMMAS: [f64; 3] = [0.5, 0.75, 1.0];

/// Block sizes `p1..p6`, `q1`, `q2`, `m3`, `n4` drawn from `0..=max`; the
/// remaining sizes follow from the side identities. All four outer
/// dimensions are positive.
pub fn random_rsvd_partition<R: Rng + ?Sized>(rng: &mut R, max: usize) -> RsvdPartition {
    loop {
        let mut d = || rng.random_range(0..=max);
        let p = [d(), d(), d(), d(), d(), d()];
        let (q1, q2, m3, n4) = (d(), d(), d(), d());
        let part = RsvdPartition {
            p,
            q: [q1, q2, p[0], p[1], p[2], p[3]],
            m: [p[0], p[1], m3, p[4]],
            n: [q2, p[0], p[2], n4],
        };
        let (a, b, c, e) = part.dims();
        if a > 0 && b > 0 && c > 0 && e > 0 {
            return part;
        }
    }
}

/// Unit lower times unit upper triangular with entries in `{-1, 0, 1}`.
fn unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMatrix {
    let mut pick = || [-1.0, 0.0, 0.0, 1.0][rng.random_range(0..4)];
    let l = RMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else if i > j { pick() } else { 0.0 });
    let u = RMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else if i < j { pick() } else { 0.0 });
    l.matmul(&u)
}

fn signed_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = RMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m[(i, j)] = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    }
    m
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = vec![0];
    for &s in sizes {
        o.push(o.last().unwrap() + s);
    }
    o
}

/// The diagonal-pattern factors `Σ_α`, `Σ_β`, `Σ_γ` of the restricted form.
fn sigma_factors(part: &RsvdPartition, alpha: &[f64], beta: &[f64], gamma: &[f64]) -> (RMatrix, RMatrix, RMatrix) {
    let (p, q, m, n) = part.dims();
    let (po, qo, mo, no) = (offsets(&part.p), offsets(&part.q), offsets(&part.m), offsets(&part.n));
    let mut sa = RMatrix::zeros(p, q);
    let mut sb = RMatrix::zeros(p, m);
    let mut sc = RMatrix::zeros(n, q);
    let eye = |mat: &mut RMatrix, r0: usize, c0: usize, k: usize| {
        for i in 0..k {
            mat[(r0 + i, c0 + i)] = 1.0;
        }
    };
    for j in 0..part.p[0] {
        sa[(po[0] + j, qo[2] + j)] = alpha[j];
        sb[(po[0] + j, mo[0] + j)] = beta[j];
        sc[(no[1] + j, qo[2] + j)] = gamma[j];
    }
    eye(&mut sa, po[1], qo[3], part.p[1]);
    eye(&mut sb, po[1], mo[1], part.p[1]);
    eye(&mut sa, po[2], qo[4], part.p[2]);
    eye(&mut sa, po[3], qo[5], part.p[3]);
    eye(&mut sb, po[4], mo[3], part.p[4]);
    eye(&mut sc, no[0], qo[1], part.n[0]);
    eye(&mut sc, no[2], qo[4], part.n[2]);
    (sa, sb, sc)
}

fn pick<R: Rng + ?Sized>(values: &[f64], count: usize, rng: &mut R) -> Vec<f64> {
    (0..count).map(|_| values[rng.random_range(0..values.len())]).collect()
}

impl StructureTemplate {
    /// A template of `kind` with blocks drawn from `0..=max`.
    pub fn random<R: Rng + ?Sized>(kind: StructureKind, max: usize, rng: &mut R) -> Self {
        let part = match kind {
            StructureKind::Svd => loop {
                let (r, p2, q2) = (rng.random_range(0..=max), rng.random_range(0..=max), rng.random_range(0..=max));
                if r + p2 > 0 && r + q2 > 0 {
                    break RsvdPartition::svd(r + p2, r + q2, r);
                }
            },
            StructureKind::Qsvd => loop {
                let mut d = || rng.random_range(0..=max);
                let (p1, p2, p3, q1, q2, n3) = (d(), d(), d(), d(), d(), d());
                let qs = QsvdPartition { p1, p2, p3, q1, q2, q3: p1, q4: p2, n1: q2, n2: p1, n3 };
                if qs.p() > 0 && qs.q() > 0 && qs.n() > 0 {
                    break qs.to_rsvd();
                }
            },
            StructureKind::Rsvd => random_rsvd_partition(rng, max),
        };
        Self::from_partition(kind, part, rng).expect("drawn partition is consistent")
    }

    /// Builds `A`, `B`, `C` with the given block sizes. For the QSVD kind the
    /// partition must come from [`QsvdPartition::to_rsvd`], for the SVD kind
    /// from [`RsvdPartition::svd`].
    pub fn from_partition<R: Rng + ?Sized>(kind: StructureKind, part: RsvdPartition, rng: &mut R) -> Result<Self> {
        if !part.is_consistent() {
            return Err(Error::InvalidArgument("block sizes violate the side identities".into()));
        }
        let (p, q, m, n) = part.dims();
        let k = part.p[0];
        match kind {
            StructureKind::Svd => {
                if part != RsvdPartition::svd(p, q, k) {
                    return Err(Error::InvalidArgument("not an SVD partition".into()));
                }
                let mut s = RMatrix::zeros(p, q);
                for (j, v) in pick(&ALPHAS, k, rng).into_iter().enumerate() {
                    s[(j, j)] = v;
                }
                let a = unimodular(p, rng).matmul(&s).matmul(&unimodular(q, rng));
                let sigmas = singular_values(&a)[..k].to_vec();
                Ok(StructureTemplate {
                    kind,
                    a: a.to_complex(),
                    b: CMatrix::identity(p),
                    c: CMatrix::identity(q),
                    partition: part,
                    sigmas,
                })
            }
            StructureKind::Qsvd | StructureKind::Rsvd => {
                let qsvd = kind == StructureKind::Qsvd;
                if qsvd && (part.p[2] + part.p[3] + part.p[5] + part.m[2] > 0 || m != p) {
                    return Err(Error::InvalidArgument("not a QSVD partition".into()));
                }
                let alpha = pick(&ALPHAS, k, rng);
                let beta = if qsvd { vec![1.0; k] } else { pick(&BETAS, k, rng) };
                let gamma = pick(&GAMMAS, k, rng);
                let (sa, sb, sc) = sigma_factors(&part, &alpha, &beta, &gamma);
                let yinv = unimodular(q, rng);
                let v = signed_permutation(n, rng);
                let c = v.matmul(&sc).matmul(&yinv);
                let (a, b) = if qsvd {
                    (signed_permutation(p, rng).matmul(&sa).matmul(&yinv), RMatrix::identity(p))
                } else {
                    let w = unimodular(p, rng);
                    let u = signed_permutation(m, rng);
                    (w.matmul(&sa).matmul(&yinv), w.matmul(&sb).matmul(&u.transpose()))
                };
                let sigmas = (0..k).map(|j| alpha[j] / (beta[j] * gamma[j])).collect();
                Ok(StructureTemplate {
                    kind,
                    a: a.to_complex(),
                    b: b.to_complex(),
                    c: c.to_complex(),
                    partition: part,
                    sigmas,
                })
            }
        }
    }

    pub fn pencil(&self, formulation: Formulation) -> Result<Pencil> {
        match (self.kind, formulation) {
            (StructureKind::Svd, Formulation::SqSvd) => build_sq_svd(&self.a),
            (StructureKind::Svd, Formulation::AugSvd) => build_aug_svd(&self.a),
            (StructureKind::Svd, Formulation::CpfSvd) => build_cpf_svd(&self.a),
            (StructureKind::Qsvd, Formulation::SqQsvd) => build_sq_qsvd(&self.a, &self.c),
            (StructureKind::Qsvd, Formulation::AugQsvd) => build_aug_qsvd(&self.a, &self.c),
            (StructureKind::Qsvd, Formulation::CpfQsvd) => build_cpf_qsvd(&self.a, &self.c),
            (StructureKind::Rsvd, Formulation::AugRsvd) => build_aug_rsvd(&self.a, &self.b, &self.c),
            (StructureKind::Rsvd, Formulation::CpfRsvd) => build_cpf_rsvd(&self.a, &self.b, &self.c),
            (kind, f) => Err(Error::InvalidArgument(format!("{f} does not apply to a {kind:?} template"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcf::{partition_from_ranks, Ranks};
    use crate::matcore::seeded_rng;

    #[test]
    fn ranks_of_templates_recover_partition() {
        let mut rng = seeded_rng(11);
        for kind in [StructureKind::Svd, StructureKind::Qsvd, StructureKind::Rsvd] {
            for _ in 0..10 {
                let t = StructureTemplate::random(kind, 2, &mut rng);
                let (p, q, m, n) = t.partition.dims();
                let r = Ranks::of(&t.a, &t.b, &t.c, Some(1e-10)).unwrap();
                assert_eq!(partition_from_ranks(p, q, m, n, r).unwrap(), t.partition, "{kind:?}");
            }
        }
    }

    #[test]
    fn qsvd_template_has_identity_b() {
        let mut rng = seeded_rng(2);
        let t = StructureTemplate::random(StructureKind::Qsvd, 2, &mut rng);
        assert_eq!(t.b, CMatrix::identity(t.a.rows()));
        assert!(t.pencil(Formulation::CpfRsvd).is_err());
    }
}
