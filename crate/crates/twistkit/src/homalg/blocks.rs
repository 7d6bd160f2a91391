//! Inclusions, projections and block matrices of graded maps between direct sums.

use crate::error::{Error, Result};
use crate::homalg::complex::{direct_sum, Cx};
use crate::homalg::graded::{same_complex, GradedMap};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

fn offset<F: Scalar>(parts: &[Cx<F>], k: usize, n: i64) -> usize {
    parts[..k].iter().map(|c| c.dim(n)).sum()
}

fn check_sum<F: Scalar>(parts: &[Cx<F>], sum: &Cx<F>) -> Result<()> {
    let refs: Vec<&_> = parts.iter().map(|c| &**c).collect();
    if direct_sum(&refs) != **sum {
        return Err(Error::Composition(
            "complex is not the direct sum of the given parts".into(),
        ));
    }
    Ok(())
}

/// Inclusion of the `k`-th summand into `sum = parts[0] ⊕ parts[1] ⊕ ...`.
pub fn inclusion<F: Scalar>(parts: &[Cx<F>], sum: &Cx<F>, k: usize) -> Result<GradedMap<F>> {
    check_sum(parts, sum)?;
    GradedMap::from_fn(parts[k].clone(), sum.clone(), 0, |n| {
        let mut m = Matrix::zeros(sum.dim(n), parts[k].dim(n));
        m.set_block(offset(parts, k, n), 0, &Matrix::identity(parts[k].dim(n)));
        Some(m)
    })
}

/// Projection of `sum = parts[0] ⊕ parts[1] ⊕ ...` onto its `k`-th summand.
pub fn projection<F: Scalar>(parts: &[Cx<F>], sum: &Cx<F>, k: usize) -> Result<GradedMap<F>> {
    check_sum(parts, sum)?;
    GradedMap::from_fn(sum.clone(), parts[k].clone(), 0, |n| {
        let mut m = Matrix::zeros(parts[k].dim(n), sum.dim(n));
        m.set_block(0, offset(parts, k, n), &Matrix::identity(parts[k].dim(n)));
        Some(m)
    })
}

/// Assembles a degree-`degree` map between direct sums from blocks;
/// `blocks[i][j]` maps `source_parts[j]` to `target_parts[i]`, `None` is zero.
pub fn block_map<F: Scalar>(
    source_parts: &[Cx<F>],
    source: &Cx<F>,
    target_parts: &[Cx<F>],
    target: &Cx<F>,
    degree: i64,
    blocks: &[Vec<Option<&GradedMap<F>>>],
) -> Result<GradedMap<F>> {
    check_sum(source_parts, source)?;
    check_sum(target_parts, target)?;
    if blocks.len() != target_parts.len() || blocks.iter().any(|r| r.len() != source_parts.len()) {
        return Err(Error::Composition(
            "block grid does not match the summands".into(),
        ));
    }
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if let Some(b) = b {
                if b.degree() != degree
                    || !same_complex(b.source(), &source_parts[j])
                    || !same_complex(b.target(), &target_parts[i])
                {
                    return Err(Error::Composition(format!(
                        "block ({i}, {j}) has the wrong endpoints or degree"
                    )));
                }
            }
        }
    }
    GradedMap::from_fn(source.clone(), target.clone(), degree, |n| {
        let mut m = Matrix::zeros(target.dim(n + degree), source.dim(n));
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    m.set_block(
                        offset(target_parts, i, n + degree),
                        offset(source_parts, j, n),
                        &b.component(n),
                    );
                }
            }
        }
        Some(m)
    })
}

/// Extracts block `(i, j)` of a map between direct sums.
pub fn block_of<F: Scalar>(
    map: &GradedMap<F>,
    source_parts: &[Cx<F>],
    target_parts: &[Cx<F>],
    i: usize,
    j: usize,
) -> Result<GradedMap<F>> {
    check_sum(source_parts, map.source())?;
    check_sum(target_parts, map.target())?;
    let k = map.degree();
    GradedMap::from_fn(source_parts[j].clone(), target_parts[i].clone(), k, |n| {
        let r0 = offset(target_parts, i, n + k);
        let c0 = offset(source_parts, j, n);
        Some(map.component(n).submatrix(
            r0,
            r0 + target_parts[i].dim(n + k),
            c0,
            c0 + source_parts[j].dim(n),
        ))
    })
}
