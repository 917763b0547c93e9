//! Replicas of hyperbolic elements with rational spectrum and of unipotent
//! elements, through multiplicative relation lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{NashError, Result};
use crate::explog::log_unipotent;
use crate::jordan::{classify, Setting};
use crate::linalg::Linalg;
use crate::matrix::Matrix;
use crate::scalar::Q;
use crate::spectrum::{exact_pieces, PieceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReplicaKind {
    Hyperbolic,
    Unipotent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaDatum {
    pub kind: ReplicaKind,
    pub dimension: usize,
    /// Distinct eigenvalues, ascending (hyperbolic case).
    pub eigenvalues: Vec<Q>,
    /// Basis of the relation lattice among `eigenvalues`, in Hermite normal
    /// form (hyperbolic case).
    pub relation_lattice: Vec<Vec<i64>>,
    /// The logarithm of the element (unipotent case).
    pub generator: Option<Matrix>,
}

/// Refines a list of integers `> 1` into pairwise coprime integers `> 1`
/// generating the same multiplicative monoid closure.
fn coprime_base(mut items: Vec<BigInt>) -> Vec<BigInt> {
    items.retain(|v| *v > BigInt::one());
    items.sort();
    items.dedup();
    'outer: loop {
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let g = items[i].gcd(&items[j]);
                if g > BigInt::one() {
                    let a = &items[i] / &g;
                    let b = &items[j] / &g;
                    items.remove(j);
                    items.remove(i);
                    items.extend([g, a, b]);
                    items.retain(|v| *v > BigInt::one());
                    items.sort();
                    items.dedup();
                    continue 'outer;
                }
            }
        }
        return items;
    }
}

fn valuation(mut v: BigInt, base: &BigInt) -> (i64, BigInt) {
    let mut e = 0;
    while (&v % base).is_zero() {
        v /= base;
        e += 1;
    }
    (e, v)
}

/// Exponent vectors of positive rationals over a pairwise coprime base:
/// `values[i] = Π base_b^{E[b][i]}`.
fn exponent_matrix(values: &[Q]) -> Vec<Vec<i64>> {
    let parts: Vec<BigInt> = values.iter().flat_map(|v| [v.numer().clone(), v.denom().clone()]).collect();
    let base = coprime_base(parts);
    base.iter()
        .map(|b| {
            values
                .iter()
                .map(|v| {
                    let (num_e, _) = valuation(v.numer().clone(), b);
                    let (den_e, _) = valuation(v.denom().clone(), b);
                    num_e - den_e
                })
                .collect()
        })
        .collect()
}

/// Z-basis of `{k ∈ ℤ^m : E·k = 0}` by unimodular column operations on
/// `[E; I]`.
fn integer_kernel(e: &[Vec<i64>], m: usize) -> Vec<Vec<BigInt>> {
    let rows = e.len();
    // Columns of the augmented matrix: top part E, bottom part identity.
    let mut cols: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut c: Vec<BigInt> = e.iter().map(|r| BigInt::from(r[j])).collect();
            c.extend((0..m).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut start = 0;
    for r in 0..rows {
        // Euclid on row r among columns start..m.
        loop {
            let nonzero: Vec<usize> = (start..m).filter(|&j| !cols[j][r].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    cols.swap(start, j);
                    start += 1;
                }
                break;
            }
            let &p = nonzero.iter().min_by_key(|&&j| cols[j][r].abs()).expect("nonempty");
            for &j in &nonzero {
                if j == p {
                    continue;
                }
                let q = cols[j][r].div_floor(&cols[p][r]);
                let pc = cols[p].clone();
                for (x, y) in cols[j].iter_mut().zip(&pc) {
                    *x -= &q * y;
                }
            }
        }
    }
    cols[start..].iter().map(|c| c[rows..].to_vec()).collect()
}

/// Row Hermite normal form of an integer basis: positive pivots, entries
/// above each pivot reduced into `[0, pivot)`.
fn hermite(mut rows: Vec<Vec<BigInt>>, m: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..m {
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&i) = nonzero.first() {
                    rows.swap(r, i);
                    if rows[r][c].is_negative() {
                        for x in rows[r].iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    for i in 0..r {
                        let q = rows[i][c].div_floor(&rows[r][c]);
                        let pr = rows[r].clone();
                        for (x, y) in rows[i].iter_mut().zip(&pr) {
                            *x -= &q * y;
                        }
                    }
                    r += 1;
                }
                break;
            }
            let &p = nonzero.iter().min_by_key(|&&i| rows[i][c].abs()).expect("nonempty");
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[p][c]);
                let pr = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows.truncate(r);
    rows
}

fn to_i64(rows: Vec<Vec<BigInt>>) -> Result<Vec<Vec<i64>>> {
    rows.into_iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| NashError::NumericalFailure("lattice entry overflows i64".into())))
                .collect()
        })
        .collect()
}

/// Basis (Hermite normal form) of `{k ∈ ℤ^m : Π values_i^{k_i} = 1}`.
pub fn exponent_lattice(values: &[Q]) -> Result<Vec<Vec<i64>>> {
    if let Some(v) = values.iter().find(|v| !v.is_positive()) {
        return Err(NashError::NotPositiveRational(crate::scalar::format_q(v)));
    }
    let m = values.len();
    let e = exponent_matrix(values);
    to_i64(hermite(integer_kernel(&e, m), m))
}

/// Rank of the multiplicative group generated by `values`.
pub fn hom_space_dimension(values: &[Q]) -> Result<usize> {
    Ok(values.len() - exponent_lattice(values)?.len())
}

/// Whether `Π values_i^{k_i} = 1` exactly.
pub fn satisfies_relation(values: &[Q], k: &[i64]) -> bool {
    let mut acc = Q::one();
    for (v, &e) in values.iter().zip(k) {
        let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
        acc = if e >= 0 { acc * p } else { acc / p };
    }
    acc.is_one()
}

/// Replica of a hyperbolic element with rational eigenvalues: the subgroup
/// of its diagonal torus cut out by the relations among its eigenvalues.
pub fn replica_hyperbolic(x: &Matrix) -> Result<ReplicaDatum> {
    let m = Q::unwrap(x);
    let exact = Matrix::Exact(m.clone());
    let class = classify(&exact, Setting::Group).map_err(|e| match e {
        NashError::NotInvertible => NashError::NotHyperbolic("singular matrix".into()),
        other => other,
    })?;
    if !class.hyperbolic {
        return Err(NashError::NotHyperbolic("needs a semisimple matrix with positive spectrum".into()));
    }
    let mut eigenvalues = exact_pieces(&m)
        .into_iter()
        .map(|p| match p.kind {
            PieceKind::Rational(v) => Ok(v),
            _ => Err(NashError::IrrationalSpectrum),
        })
        .collect::<Result<Vec<_>>>()?;
    eigenvalues.sort();
    let relation_lattice = exponent_lattice(&eigenvalues)?;
    Ok(ReplicaDatum {
        kind: ReplicaKind::Hyperbolic,
        dimension: eigenvalues.len() - relation_lattice.len(),
        eigenvalues,
        relation_lattice,
        generator: None,
    })
}

/// Replica of a unipotent element: the one-parameter group `exp(t·log x)`.
pub fn replica_unipotent(x: &Matrix) -> Result<ReplicaDatum> {
    let generator = log_unipotent(x)?;
    let dimension = usize::from(!generator.is_negligible(1.0 + x.frobenius()));
    Ok(ReplicaDatum {
        kind: ReplicaKind::Unipotent,
        dimension,
        eigenvalues: Vec::new(),
        relation_lattice: Vec::new(),
        generator: Some(generator),
    })
}

/// Unipotent elements go to [`replica_unipotent`], everything else to
/// [`replica_hyperbolic`].
pub fn replica(x: &Matrix) -> Result<ReplicaDatum> {
    match replica_unipotent(x) {
        Err(NashError::NotUnipotent) => replica_hyperbolic(x),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::scalar::{q, qi};

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn lattice_examples() {
        let l = exponent_lattice(&qs(&[2, 4, 8])).unwrap();
        assert_eq!(l, vec![vec![1, 1, -1], vec![0, 3, -2]]);
        assert!(l.iter().all(|k| satisfies_relation(&qs(&[2, 4, 8]), k)));
        assert!(exponent_lattice(&qs(&[2, 3])).unwrap().is_empty());
        assert_eq!(exponent_lattice(&qs(&[1, 1])).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(exponent_lattice(&[qi(2), qi(-3)]), Err(NashError::NotPositiveRational(_))));
        assert_eq!(hom_space_dimension(&qs(&[2, 4, 8])).unwrap(), 1);
        assert_eq!(hom_space_dimension(&qs(&[2, 3, 5])).unwrap(), 3);
        assert_eq!(hom_space_dimension(&[]).unwrap(), 0);
    }

    #[test]
    fn lattice_with_fractions_and_shared_factors() {
        // 6, 10, 15 and 3/5 generate a rank-3 group; the one relation is 6/10 = 3/5.
        let v = vec![qi(6), qi(10), qi(15), q(3, 5)];
        let l = exponent_lattice(&v).unwrap();
        assert_eq!(l.len(), 1);
        assert!(satisfies_relation(&v, &l[0]));
    }

    #[test]
    fn coprime_base_refines() {
        let b = coprime_base(vec![BigInt::from(12), BigInt::from(18)]);
        for (i, x) in b.iter().enumerate() {
            for y in &b[i + 1..] {
                assert!(x.gcd(y).is_one());
            }
        }
    }

    #[test]
    fn hyperbolic_examples() {
        let d = Matrix::Exact(Mat::diag(&qs(&[2, 4, 8])));
        let r = replica_hyperbolic(&d).unwrap();
        assert_eq!(r.dimension, 1);
        let r = replica_hyperbolic(&Matrix::Exact(Mat::diag(&qs(&[2, 3])))).unwrap();
        assert_eq!((r.dimension, r.relation_lattice.len()), (2, 0));
        let r = replica_hyperbolic(&Matrix::Exact(Mat::identity(3))).unwrap();
        assert_eq!(r.dimension, 0);
        let rot = Matrix::Exact(Mat::from_rows(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]).unwrap());
        assert!(matches!(replica_hyperbolic(&rot), Err(NashError::NotHyperbolic(_))));
        let irr = Matrix::Exact(Mat::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), qi(1)]]).unwrap());
        assert_eq!(replica_hyperbolic(&irr), Err(NashError::IrrationalSpectrum));
    }

    #[test]
    fn unipotent_examples() {
        let u = Matrix::Exact(Mat::from_rows(vec![vec![qi(1), qi(1)], vec![qi(0), qi(1)]]).unwrap());
        let r = replica_unipotent(&u).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(r.generator, Some(Matrix::Exact(Mat::from_rows(vec![vec![qi(0), qi(1)], vec![qi(0), qi(0)]]).unwrap())));
        assert_eq!(replica_unipotent(&Matrix::Exact(Mat::identity(2))).unwrap().dimension, 0);
        let n = crate::battery::unit(3, 0, 1).add(&crate::battery::unit(3, 1, 2));
        let x = crate::explog::exp_nilpotent(&Matrix::Exact(n.clone())).unwrap();
        let r = replica_unipotent(&x).unwrap();
        assert_eq!((r.dimension, r.generator), (1, Some(Matrix::Exact(n))));
    }
}
