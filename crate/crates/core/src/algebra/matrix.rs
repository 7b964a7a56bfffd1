//! Fraction-free determinants and resultants over `K[t]`.

use super::scalar::Scalar;
use super::unipoly::UniPoly;
use crate::error::Result;

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(mut m: Vec<Vec<Scalar>>) -> Result<Scalar> {
    let n = m.len();
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut sign = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Scalar::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.checked_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Sylvester matrix of `a` and `b` (degrees `m`, `n`).
pub fn sylvester(a: &UniPoly, b: &UniPoly) -> Vec<Vec<Scalar>> {
    let m = a.degree().unwrap_or(0);
    let n = b.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Scalar::zero(); size];
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Scalar::zero(); size];
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant `Res(a, b)` via the Sylvester determinant.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Scalar> {
    if a.is_zero() || b.is_zero() {
        return Ok(Scalar::zero());
    }
    if a.degree() == Some(0) {
        return Ok(a.lc().pow(b.degree().unwrap() as u32));
    }
    if b.degree() == Some(0) {
        return Ok(b.lc().pow(a.degree().unwrap() as u32));
    }
    determinant(sylvester(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = vec![
            vec![Scalar::int(0), Scalar::int(1), Scalar::int(2)],
            vec![Scalar::int(3), Scalar::int(4), Scalar::int(5)],
            vec![Scalar::int(6), Scalar::int(7), Scalar::int(9)],
        ];
        assert_eq!(determinant(m).unwrap(), Scalar::int(-3));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(z^2 - 1, z - 2) = (1 - 2)(-1 - 2) = 3.
        assert_eq!(
            resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])).unwrap(),
            Scalar::int(3)
        );
    }

    #[test]
    fn resultant_in_parameter() {
        // Res_z(z^2 - 1, t - z) vanishes at t = +-1.
        let b = UniPoly::new(vec![Scalar::t(), Scalar::int(-1)]);
        let r = resultant(&p(&[-1, 0, 1]), &b).unwrap();
        assert!(r.eval_t(&Scalar::int(1)).is_zero());
        assert!(r.eval_t(&Scalar::int(-1)).is_zero());
        assert_eq!(r.t_degree(), Some(2));
    }
}
