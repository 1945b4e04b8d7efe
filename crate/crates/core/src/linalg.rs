//! Exact linear algebra over an arbitrary [`Field`]: kernel bases, linear
//! solves and determinants by Gaussian elimination. Matrices are small
//! (a handful of rows), so no pivoting strategy beyond "first nonzero".

use crate::error::{CasError, Result};
use crate::field::Field;

/// Basis of the right kernel of `mat` (rows x cols). Rows may be fewer than
/// columns. Returns one vector per free column.
pub fn kernel<K: Field>(mat: &[Vec<K>]) -> Result<Vec<Vec<K>>> {
    if mat.is_empty() {
        return Ok(vec![]);
    }
    let cols = mat[0].len();
    let exemplar = &mat[0][0];
    let mut m: Vec<Vec<K>> = mat.to_vec();
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        let mut pivot = None;
        for row in rank..rows {
            if !m[row][col].is_zero() {
                pivot = Some(row);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv()?;
        for j in 0..cols {
            m[rank][j] = m[rank][j].mul(&inv);
        }
        for row in 0..rows {
            if row != rank && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for j in 0..cols {
                    let t = f.mul(&m[rank][j]);
                    m[row][j] = m[row][j].sub(&t);
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // Run remaining columns against the already-reduced rows to mark pivots
    // correctly even after an early exit above.
    let mut basis = Vec::new();
    for free_col in 0..cols {
        if pivot_of_col[free_col].is_some() {
            continue;
        }
        let mut v = vec![exemplar.zero_like(); cols];
        v[free_col] = exemplar.one_like();
        for col in 0..cols {
            if let Some(r) = pivot_of_col[col] {
                v[col] = m[r][free_col].neg();
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Solves `A x = b` for square or overdetermined consistent systems with a
/// unique solution.
pub fn solve<K: Field>(mat: &[Vec<K>], rhs: &[K]) -> Result<Vec<K>> {
    let rows = mat.len();
    assert_eq!(rows, rhs.len());
    let cols = mat[0].len();
    let aug: Vec<Vec<K>> = mat
        .iter()
        .zip(rhs.iter())
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.neg());
            r
        })
        .collect();
    // x solves Ax = b  iff  (x, 1) is in the kernel of [A | -b].
    let null = kernel(&aug)?;
    for v in &null {
        if !v[cols].is_zero() {
            let scale = v[cols].inv()?;
            return Ok(v[..cols].iter().map(|c| c.mul(&scale)).collect());
        }
    }
    Err(CasError::DegenerateSystem("inconsistent linear system".into()))
}

pub fn det<K: Field>(mat: &[Vec<K>]) -> Result<K> {
    let n = mat.len();
    if n == 0 {
        panic!("determinant of an empty matrix");
    }
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    let exemplar = &mat[0][0];
    let mut m: Vec<Vec<K>> = mat.to_vec();
    let mut acc = exemplar.one_like();
    for col in 0..n {
        let mut pivot = None;
        for row in col..n {
            if !m[row][col].is_zero() {
                pivot = Some(row);
                break;
            }
        }
        let Some(p) = pivot else {
            return Ok(exemplar.zero_like());
        };
        if p != col {
            m.swap(col, p);
            acc = acc.neg();
        }
        acc = acc.mul(&m[col][col]);
        let inv = m[col][col].inv()?;
        for row in (col + 1)..n {
            if m[row][col].is_zero() {
                continue;
            }
            let f = m[row][col].mul(&inv);
            for j in col..n {
                let t = f.mul(&m[col][j]);
                m[row][j] = m[row][j].sub(&t);
            }
        }
    }
    Ok(acc)
}
