//! Strictifying a quasi-isomorphism of bounded complexes to an isomorphism
//! after adding elementary summands on both sides.
//!
//! For `f: B -> A`, the source is padded by spans `(Q^n --id--> Q^n)`, where
//! `Q^n` complements the image of `f^n` plus `d_A Q^{n-1}`, mapped to `A` by
//! `(Q^n, d_A Q^n)`, which makes `F = [f, F_E]: B ⊕ E_B -> A` surjective. Its kernel `K` is
//! acyclic and is split as an elementary complex `E_A`. A chain section
//! `σ: A -> B ⊕ E_B` of `F` gives the isomorphism
//! `[j, σ]: E_A ⊕ A -> B ⊕ E_B`, whose inverse, reordered, is `f̃`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::blocks::{block_map, inclusion, projection};
use crate::homalg::{
    direct_sum, is_elementary, is_quasi_iso, split_acyclic, Complex, Cx, ElementaryDecl, GradedMap,
    Harmonic,
};
use crate::matrix::Matrix;
use crate::report::{Finding, Report};
use crate::scalar::Scalar;

/// The output of [`strictify`].
#[derive(Clone, Debug)]
pub struct Strictification<F> {
    /// The input map `f: B -> A`.
    pub f: GradedMap<F>,
    /// Elementary summand added to `A`.
    pub e_a: Cx<F>,
    /// Declaration of `e_a`.
    pub decl_a: ElementaryDecl,
    /// Elementary summand added to `B`.
    pub e_b: Cx<F>,
    /// Declaration of `e_b`.
    pub decl_b: ElementaryDecl,
    /// `Ã = A ⊕ E_A`.
    pub a_tilde: Cx<F>,
    /// `B̃ = B ⊕ E_B`.
    pub b_tilde: Cx<F>,
    /// The isomorphism `f̃: B̃ -> Ã`.
    pub f_tilde: GradedMap<F>,
    /// `f̃^{-1}`.
    pub f_tilde_inv: GradedMap<F>,
    /// Self-check of the four postconditions.
    pub check: Report,
}

impl<F: Scalar> Strictification<F> {
    /// `A`.
    pub fn a(&self) -> &Cx<F> {
        self.f.target()
    }

    /// `B`.
    pub fn b(&self) -> &Cx<F> {
        self.f.source()
    }

    /// True when `f̃` restricted to `B` lands in `A` and equals `f` there,
    /// which is possible only for injective `f`.
    pub fn restriction_is_literal(&self) -> bool {
        let parts_a = [self.a().clone(), self.e_a.clone()];
        let parts_b = [self.b().clone(), self.e_b.clone()];
        let (Ok(ia), Ok(ib)) = (
            inclusion(&parts_a, &self.a_tilde, 0),
            inclusion(&parts_b, &self.b_tilde, 0),
        ) else {
            return false;
        };
        match (self.f_tilde.compose(&ib), ia.compose(&self.f)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        }
    }
}

/// Basis of a complement of the column space of `m`.
fn cokernel_complement<F: Scalar>(m: &Matrix<F>) -> Matrix<F> {
    let idx = m.independent_columns();
    m.select_columns(&idx).extend_to_basis()
}

/// Strictifies a quasi-isomorphism `f: B -> A`.
pub fn strictify<F: Scalar>(f: &GradedMap<F>) -> Result<Strictification<F>> {
    if f.degree() != 0 || !is_quasi_iso(f)? {
        return Err(Error::Refused(
            "strictification needs a quasi-isomorphism".into(),
        ));
    }
    let (a, b) = (f.target().clone(), f.source().clone());

    let mut q: BTreeMap<i64, Matrix<F>> = BTreeMap::new();
    for n in a.degrees() {
        let covered = match q.get(&(n - 1)) {
            Some(prev) => Matrix::hstack(a.dim(n), &[&f.component(n), &a.d(n - 1).mul(prev)]),
            None => f.component(n),
        };
        let c = cokernel_complement(&covered);
        if c.cols() > 0 {
            q.insert(n, c);
        }
    }
    let decl_b = ElementaryDecl::new(q.iter().map(|(&n, m)| (m.cols(), n)).collect())?;
    let e_b: Cx<F> = Arc::new(decl_b.build());
    let f_e = GradedMap::from_fn(e_b.clone(), a.clone(), 0, |n| {
        let mut m = Matrix::zeros(a.dim(n), e_b.dim(n));
        for (j, (&p, qp)) in q.iter().enumerate() {
            if p == n {
                m.set_block(0, decl_b.offset(j, n), qp);
            } else if p + 1 == n {
                m.set_block(0, decl_b.offset(j, n), &a.d(p).mul(qp));
            }
        }
        Some(m)
    })?;
    let b_tilde: Cx<F> = Arc::new(direct_sum(&[&b, &e_b]));
    let parts_b = [b.clone(), e_b.clone()];
    let big_f = block_map(
        &parts_b,
        &b_tilde,
        std::slice::from_ref(&a),
        &a,
        0,
        &[vec![Some(f), Some(&f_e)]],
    )?;

    // K = ker F as a subcomplex of B̃, with inclusion columns ker_basis[n].
    let mut ker_basis: BTreeMap<i64, Matrix<F>> = BTreeMap::new();
    for n in b_tilde.degrees() {
        ker_basis.insert(n, big_f.component(n).kernel());
    }
    let kdim = |n: i64| ker_basis.get(&n).map_or(0, |m| m.cols());
    let k_cx: Cx<F> = if b_tilde.is_zero() {
        Arc::new(Complex::zero())
    } else {
        let (lo, hi) = (b_tilde.lo(), b_tilde.hi());
        let dims: Vec<usize> = (lo..=hi).map(kdim).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let image = b_tilde.d(n).mul(&ker_basis[&n]);
                ker_basis[&(n + 1)]
                    .solve(&image)
                    .expect("kernel is a subcomplex")
            })
            .collect::<Vec<_>>();
        Arc::new(Complex::new(lo, dims, diffs)?)
    };
    let iota_k = GradedMap::from_fn(k_cx.clone(), b_tilde.clone(), 0, |n| {
        ker_basis.get(&n).cloned()
    })?;
    let split = split_acyclic(&k_cx)?;
    let decl_a = split.decl.clone();
    let e_a = split.iso.source().clone();
    let j = iota_k.compose(&split.iso)?;

    // Section σ = σ_0 + ι_K s_K c', with c' the defect of a degreewise section.
    let sigma0 = GradedMap::from_fn(a.clone(), b_tilde.clone(), 0, |n| {
        Some(
            big_f
                .component(n)
                .solve(&Matrix::identity(a.dim(n)))
                .expect("F is surjective"),
        )
    })?;
    let defect = sigma0.hom_differential().neg();
    let defect_k = GradedMap::from_fn(a.clone(), k_cx.clone(), 1, |n| {
        let c = defect.component(n);
        Some(match ker_basis.get(&(n + 1)) {
            Some(kb) => kb.solve(&c).expect("defect lies in the kernel"),
            None => Matrix::zeros(0, c.cols()),
        })
    })?;
    let s_k = Harmonic::new(k_cx.clone()).contraction();
    let sigma = sigma0.add(&iota_k.compose(&s_k.compose(&defect_k)?)?)?;

    let split_sum: Cx<F> = Arc::new(direct_sum(&[&e_a, &a]));
    let psi = block_map(
        &[e_a.clone(), a.clone()],
        &split_sum,
        std::slice::from_ref(&b_tilde),
        &b_tilde,
        0,
        &[vec![Some(&j), Some(&sigma)]],
    )?;
    let psi_inv = psi.inverse()?;
    let a_tilde: Cx<F> = Arc::new(direct_sum(&[&a, &e_a]));
    let id_a = GradedMap::identity(a.clone());
    let id_e = GradedMap::identity(e_a.clone());
    let swap = block_map(
        &[e_a.clone(), a.clone()],
        &split_sum,
        &[a.clone(), e_a.clone()],
        &a_tilde,
        0,
        &[vec![None, Some(&id_a)], vec![Some(&id_e), None]],
    )?;
    let f_tilde = swap.compose(&psi_inv)?;
    let f_tilde_inv = f_tilde.inverse()?;
    let mut out = Strictification {
        f: f.clone(),
        e_a,
        decl_a,
        e_b,
        decl_b,
        a_tilde,
        b_tilde,
        f_tilde,
        f_tilde_inv,
        check: Report::new(),
    };
    out.check = check_strictification(&out);
    Ok(out)
}

/// Checks the postconditions: `Ã = A ⊕ E_A` and `B̃ = B ⊕ E_B` with
/// `E_A`, `E_B` the declared elementary complexes, `f̃` an isomorphism, and
/// `π_A f̃ ι_B = f`.
pub fn check_strictification<F: Scalar>(s: &Strictification<F>) -> Report {
    let mut r = Report::new();
    for (tag, base, e, decl, sum) in [
        ("strictify-i", s.a(), &s.e_a, &s.decl_a, &s.a_tilde),
        ("strictify-ii", s.b(), &s.e_b, &s.decl_b, &s.b_tilde),
    ] {
        if **sum != direct_sum(&[base, e]) {
            r.push(Finding::error(tag, "padded complex is not the direct sum"));
        }
        if **e != decl.build::<F>() || !is_elementary(e, true) {
            r.push(Finding::error(
                tag,
                "added summand is not the declared elementary complex",
            ));
        }
    }
    if !s.f_tilde.is_isomorphism() {
        r.push(Finding::error(
            "strictify-iii",
            "f̃ is not an isomorphism of complexes",
        ));
    }
    let parts_a = [s.a().clone(), s.e_a.clone()];
    let parts_b = [s.b().clone(), s.e_b.clone()];
    let restricted = projection(&parts_a, &s.a_tilde, 0)
        .and_then(|p| p.compose(&s.f_tilde))
        .and_then(|x| x.compose(&inclusion(&parts_b, &s.b_tilde, 0)?));
    match restricted {
        Ok(x) if x == s.f => {}
        Ok(x) => {
            let nnz = x.sub(&s.f).map(|d| d.nnz()).unwrap_or(0);
            r.push(
                Finding::error("strictify-iv", "the B -> A block of f̃ differs from f")
                    .with_nnz(nnz),
            );
        }
        Err(e) => r.push(Finding::error("strictify-iv", e.to_string())),
    }
    r
}
