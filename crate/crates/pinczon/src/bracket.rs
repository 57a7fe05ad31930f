//! Brackets and the dictionary between quadratic maps and cyclic forms.
//!
//! A nondegenerate symmetric degree 0 pairing `b` on `V` induces the
//! symplectic pairing `B(x, y) = (-1)^(deg x) b(x, y)` on `V[1]`. A map
//! `Q` corresponds to the form `W_Q(x_1..x_{k+1}) = B(Q(x_1..x_k),
//! x_{k+1})`; `Q` is `B`-quadratic when `W_Q` is cyclic. The Pinczon
//! bracket on cyclic forms is computed by the dual-basis contraction
//! formula; its sign placement is normalized so that the bracket is
//! isomorphic to the coderivation bracket: `{W_Q, W_Q'} = W_[Q,Q']`.

use std::sync::Arc;

use num_traits::Zero;

use crate::basis::GradedBasis;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::multilinear::{MultilinearForm, MultilinearMap};
use crate::scalar::{int, rat, Rat};
use crate::sign::Permutation;

/// Symmetric, degree 0, nondegenerate bilinear pairing on `V`, stored as
/// the dense matrix `b[i][j] = b(e_i, e_j)` with the inverse cached.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearPairing {
    basis: Arc<GradedBasis>,
    matrix: QMatrix,
    inverse: QMatrix,
}

/// The basis `(e'_i)` determined by `b(e'_j, e_i) = delta_ij`, expressed
/// in the primal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DualBasis {
    /// Row `j` holds the coordinates of `e'_j`.
    pub primal_to_dual: QMatrix,
}

impl BilinearPairing {
    pub fn new(basis: Arc<GradedBasis>, matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != basis.dim() || matrix.cols() != basis.dim() {
            return Err(Error::LengthMismatch(format!(
                "{}x{} matrix on dimension {}",
                matrix.rows(),
                matrix.cols(),
                basis.dim()
            )));
        }
        if !matrix.is_symmetric() {
            return Err(Error::InvalidInput("pairing is not symmetric".into()));
        }
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                if !matrix[(i, j)].is_zero() && basis.degree(i) + basis.degree(j) != 0 {
                    return Err(Error::Inhomogeneous(format!(
                        "b[{i}][{j}] nonzero but degrees {} + {} != 0",
                        basis.degree(i),
                        basis.degree(j)
                    )));
                }
            }
        }
        let inverse = matrix.inverse().ok_or(Error::DegeneratePairing)?;
        Ok(BilinearPairing {
            basis,
            matrix,
            inverse,
        })
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn value(&self, i: usize, j: usize) -> &Rat {
        &self.matrix[(i, j)]
    }

    /// `B(e_i, e_j) = (-1)^(shifted degree of e_i) b(e_i, e_j)`.
    pub fn symplectic_value(&self, i: usize, j: usize) -> Rat {
        let v = self.matrix[(i, j)].clone();
        if self.basis.shifted_degree(i).rem_euclid(2) == 1 {
            -v
        } else {
            v
        }
    }
}

/// Solves `b(e'_j, e_i) = delta_ij` exactly; fails on a degenerate pairing.
pub fn dual_basis(pairing: &BilinearPairing) -> DualBasis {
    // b symmetric: the coordinate rows of e'_j are the rows of b^{-1}
    DualBasis {
        primal_to_dual: pairing.inverse.clone(),
    }
}

/// The form of a map: `W_Q(x_1..x_{k+1}) = B(Q(x_1..x_k), x_{k+1})`.
pub fn form_of_map(map: &MultilinearMap, pairing: &BilinearPairing) -> Result<MultilinearForm> {
    if map.basis() != pairing.basis() {
        return Err(Error::BasisMismatch);
    }
    let basis = map.basis().clone();
    let dim = basis.dim();
    let mut entries: Vec<(Vec<usize>, Rat)> = Vec::new();
    for ((key, out), value) in map.iter() {
        for last in 0..dim {
            let pair = pairing.symplectic_value(*out, last);
            if pair.is_zero() {
                continue;
            }
            let mut tuple = key.clone();
            tuple.push(last);
            entries.push((tuple, value * &pair));
        }
    }
    MultilinearForm::from_entries(basis, map.arity() + 1, 2 + map.degree(), entries)
}

/// Inverse of [`form_of_map`] through the nondegenerate pairing: the
/// unique `Q` with `B(Q(x_1..x_k), y) = f(x_1..x_k, y)`.
pub fn map_of_form(form: &MultilinearForm, pairing: &BilinearPairing) -> Result<MultilinearMap> {
    if form.basis() != pairing.basis() {
        return Err(Error::BasisMismatch);
    }
    if form.arity() == 0 {
        return Err(Error::InvalidInput("cannot contract a 0-form".into()));
    }
    let basis = form.basis().clone();
    let dim = basis.dim();
    // Bmat = D b with D = diag((-1)^(shifted degree)); Bmat^{-1} = b^{-1} D
    let binv = &pairing.inverse;
    let mut entries: Vec<((Vec<usize>, usize), Rat)> = Vec::new();
    // group coefficients by input prefix
    let mut current: Option<(Vec<usize>, Vec<Rat>)> = None;
    let flush =
        |prefix: &Vec<usize>, rhs: &Vec<Rat>, entries: &mut Vec<((Vec<usize>, usize), Rat)>| {
            for j in 0..dim {
                let mut c = Rat::zero();
                for (m, r) in rhs.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    // (Bmat^{-1})[m][j] = b^{-1}[m][j] * (-1)^(shifted degree of j)
                    let mut term = r * &binv[(m, j)];
                    if basis.shifted_degree(j).rem_euclid(2) == 1 {
                        term = -term;
                    }
                    c += term;
                }
                if !c.is_zero() {
                    entries.push(((prefix.clone(), j), c));
                }
            }
        };
    for (tuple, value) in form.iter() {
        let (prefix, last) = (tuple[..tuple.len() - 1].to_vec(), tuple[tuple.len() - 1]);
        match &mut current {
            Some((p, rhs)) if *p == prefix => rhs[last] = value.clone(),
            _ => {
                if let Some((p, rhs)) = current.take() {
                    flush(&p, &rhs, &mut entries);
                }
                let mut rhs = vec![Rat::zero(); dim];
                rhs[last] = value.clone();
                current = Some((prefix, rhs));
            }
        }
    }
    if let Some((p, rhs)) = current.take() {
        flush(&p, &rhs, &mut entries);
    }
    MultilinearMap::from_entries(basis, form.arity() - 1, form.degree() - 2, entries)
}

/// The Pinczon bracket of cyclic forms, by the dual-basis contraction
/// formula: `{f, g} = sum_i i_{e_i} f (.) i_{e'_i} g`, with the implicit
/// Koszul signs written out. For `f` of arity `k + 1` and `g` of arity
/// `k' + 1` the cyclicization of the contracted tensor splits into the
/// rotations that carry the pairing slot into the `f` block
/// (`1 <= r <= k`) and those that leave it on the `g` side; the two
/// families carry the signs
///
/// ```text
/// r in {0, k+1, .., n-1}:  (-1)^(1 + deg f deg g + deg e_i deg f)
/// r in {1, .., k}:         (-1)^(deg f deg g + deg e_i deg f + deg e_i)
/// ```
///
/// normalized so that `{W_Q, W_Q'} = W_[Q,Q']` holds exactly.
///
/// Inputs must be cyclic over the same basis; the result is cyclic of
/// arity `k + k'` and degree `deg f + deg g - 2`. The bracket of
/// anything with a 0-form is zero.
pub fn pinczon_bracket(
    f: &MultilinearForm,
    g: &MultilinearForm,
    pairing: &BilinearPairing,
) -> Result<MultilinearForm> {
    if f.basis() != g.basis() || f.basis() != pairing.basis() {
        return Err(Error::BasisMismatch);
    }
    if !f.is_cyclic() || !g.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let basis = f.basis().clone();
    let degree = f.degree() + g.degree() - 2;
    if f.arity() == 0 || g.arity() == 0 {
        let arity = (f.arity() + g.arity()).saturating_sub(2);
        return Ok(MultilinearForm::zero(basis, arity, degree));
    }
    let k = f.arity() - 1;
    let n = f.arity() + g.arity() - 2;
    let duals = dual_basis(pairing);
    let df = f.degree().rem_euclid(2);
    let dg = g.degree().rem_euclid(2);
    let mut out = MultilinearForm::zero(basis.clone(), n, degree);
    let rho = Permutation::rotation(n);
    for i in 0..basis.dim() {
        let left = f.interior(i)?;
        if left.is_zero() {
            continue;
        }
        let coords: Vec<Rat> = (0..basis.dim())
            .map(|m| duals.primal_to_dual[(i, m)].clone())
            .collect();
        let right = g.interior_vector(&coords)?;
        if right.is_zero() {
            continue;
        }
        let ei = basis.shifted_degree(i).rem_euclid(2);
        let tensor = left.tensor(&right)?;
        let mut power = Permutation::identity(n);
        for r in 0..n.max(1) {
            let family = if r >= 1 && r <= k { ei } else { 1 };
            let exponent = df * dg + ei * df + family;
            let rotated = tensor.permute(&power)?;
            let term = if exponent.rem_euclid(2) == 1 {
                rotated.scale(&int(-1))
            } else {
                rotated
            };
            out = out.add(&term)?;
            power = power.compose(&rho);
        }
    }
    Ok(out)
}

/// The bracket induced on totally symmetric forms (the quotient of the
/// cyclic picture): `{f, g}| = (k + k') sum_i (-1)^(..) i_{e_i} f .
/// i_{e'_i} g`, for `f` of arity `k + 1` and `g` of arity `k' + 1`. The
/// symmetric product of the contracted pieces is computed as the full
/// symmetrization of their tensor divided by `k! k'!` (the stabilizer of
/// the two blocks), so that `{W_Q, W_Q'}| = (k + k') W_[Q,Q']` with the
/// symmetric-coalgebra bracket on the right.
pub fn pinczon_bracket_sym(
    f: &MultilinearForm,
    g: &MultilinearForm,
    pairing: &BilinearPairing,
) -> Result<MultilinearForm> {
    if f.basis() != g.basis() || f.basis() != pairing.basis() {
        return Err(Error::BasisMismatch);
    }
    if !f.is_symmetric() || !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let basis = f.basis().clone();
    let degree = f.degree() + g.degree() - 2;
    if f.arity() == 0 || g.arity() == 0 {
        let arity = (f.arity() + g.arity()).saturating_sub(2);
        return Ok(MultilinearForm::zero(basis, arity, degree));
    }
    let k = f.arity() - 1;
    let kp = g.arity() - 1;
    let arity = k + kp;
    let factorials: i64 = (1..=k as i64).product::<i64>() * (1..=kp as i64).product::<i64>();
    let factor = rat(arity as i64, factorials);
    let duals = dual_basis(pairing);
    let mut out = MultilinearForm::zero(basis.clone(), arity, degree);
    for i in 0..basis.dim() {
        let left = f.interior(i)?;
        if left.is_zero() {
            continue;
        }
        let coords: Vec<Rat> = (0..basis.dim())
            .map(|m| duals.primal_to_dual[(i, m)].clone())
            .collect();
        let right = g.interior_vector(&coords)?;
        if right.is_zero() {
            continue;
        }
        let ei = basis.shifted_degree(i).rem_euclid(2);
        let exponent = f.degree() * g.degree() + ei * f.degree() + 1;
        let sign = if exponent.rem_euclid(2) == 1 { -1 } else { 1 };
        out = out.add(&left.sym_product(&right)?.scale(&int(sign)))?;
    }
    Ok(out.scale(&factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn killing_sl2() -> (Arc<GradedBasis>, BilinearPairing) {
        let basis =
            GradedBasis::new(vec!["e".into(), "f".into(), "h".into()], vec![0, 0, 0]).unwrap();
        let matrix = QMatrix::from_rows(vec![
            vec![int(0), int(4), int(0)],
            vec![int(4), int(0), int(0)],
            vec![int(0), int(0), int(8)],
        ])
        .unwrap();
        let pairing = BilinearPairing::new(basis.clone(), matrix).unwrap();
        (basis, pairing)
    }

    #[test]
    fn dual_basis_identity_pairing() {
        let basis = GradedBasis::ungraded(3);
        let pairing = BilinearPairing::new(basis, QMatrix::identity(3)).unwrap();
        assert_eq!(dual_basis(&pairing).primal_to_dual, QMatrix::identity(3));
    }

    #[test]
    fn dual_basis_hyperbolic() {
        let basis = GradedBasis::ungraded(2);
        let matrix = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let pairing = BilinearPairing::new(basis, matrix.clone()).unwrap();
        assert_eq!(dual_basis(&pairing).primal_to_dual, matrix);
    }

    #[test]
    fn dual_basis_killing() {
        let (_, pairing) = killing_sl2();
        let duals = dual_basis(&pairing).primal_to_dual;
        // e' = f/4, f' = e/4, h' = h/8
        assert_eq!(duals[(0, 1)], rat(1, 4));
        assert_eq!(duals[(1, 0)], rat(1, 4));
        assert_eq!(duals[(2, 2)], rat(1, 8));
        assert_eq!(duals[(0, 0)], int(0));
    }

    #[test]
    fn degenerate_pairing_rejected() {
        let basis = GradedBasis::ungraded(2);
        let singular =
            QMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert!(matches!(
            BilinearPairing::new(basis, singular),
            Err(Error::DegeneratePairing)
        ));
    }

    #[test]
    fn map_form_roundtrip() {
        let (basis, pairing) = killing_sl2();
        let q = MultilinearMap::from_entries(
            basis,
            2,
            1,
            [
                ((vec![0, 1], 2), int(1)),
                ((vec![1, 0], 2), int(-1)),
                ((vec![2, 0], 0), int(2)),
            ],
        )
        .unwrap();
        let form = form_of_map(&q, &pairing).unwrap();
        let back = map_of_form(&form, &pairing).unwrap();
        assert_eq!(back, q);
        assert_eq!(form.degree(), 3);
    }

    #[test]
    fn zero_map_gives_zero_form() {
        let (basis, pairing) = killing_sl2();
        let q = MultilinearMap::zero(basis, 2, 1);
        assert!(form_of_map(&q, &pairing).unwrap().is_zero());
    }

    #[test]
    fn bracket_with_scalar_is_zero() {
        let (basis, pairing) = killing_sl2();
        let c = MultilinearForm::scalar(basis.clone(), int(5));
        let f = MultilinearForm::from_entries(basis, 1, 1, [(vec![0], int(1))]).unwrap();
        assert!(pinczon_bracket(&c, &f, &pairing).unwrap().is_zero());
        assert!(pinczon_bracket(&f, &c, &pairing).unwrap().is_zero());
    }
}

#[cfg(test)]
mod law_tests {
    use crate::random::{
        random_bquadratic_map, random_pairing, rng_from_seed, test_degree_vectors,
    };
    use crate::scalar::int;

    fn graded_sign(a: i64, b: i64) -> i64 {
        if (a * b).rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }

    /// The graded pre-Lie relation of the insertion composition:
    /// (Q o Q') o Q'' - (-1)^(q' q'') (Q o Q'') o Q'
    ///   = Q o (Q' o Q'' - (-1)^(q' q'') Q'' o Q').
    #[test]
    fn composition_is_graded_pre_lie() {
        let mut rng = rng_from_seed(314);
        for dim in 2..=3usize {
            for degrees in test_degree_vectors(dim) {
                let pairing = random_pairing(&degrees, &mut rng);
                for _ in 0..4 {
                    let q = random_bquadratic_map(&pairing, 2, 0.4, &mut rng).unwrap();
                    let qp = random_bquadratic_map(&pairing, 1, 0.6, &mut rng).unwrap();
                    let qpp = random_bquadratic_map(&pairing, 2, 0.4, &mut rng).unwrap();
                    let s = int(graded_sign(qp.degree(), qpp.degree()));
                    let lhs = q
                        .compose(&qp)
                        .unwrap()
                        .compose(&qpp)
                        .unwrap()
                        .sub(&q.compose(&qpp).unwrap().compose(&qp).unwrap().scale(&s))
                        .unwrap();
                    let inner = qp
                        .compose(&qpp)
                        .unwrap()
                        .sub(&qpp.compose(&qp).unwrap().scale(&s))
                        .unwrap();
                    let rhs = q.compose(&inner).unwrap();
                    assert_eq!(lhs, rhs, "dim {dim} degrees {degrees:?}");
                }
            }
        }
    }

    /// Graded Jacobi for the coderivation bracket.
    #[test]
    fn map_bracket_satisfies_graded_jacobi() {
        let mut rng = rng_from_seed(315);
        let mut triples = 0usize;
        while triples < 100 {
            for dim in 2..=3usize {
                for degrees in test_degree_vectors(dim) {
                    let pairing = random_pairing(&degrees, &mut rng);
                    let q = random_bquadratic_map(&pairing, 1, 0.6, &mut rng).unwrap();
                    let qp = random_bquadratic_map(&pairing, 2, 0.4, &mut rng).unwrap();
                    let qpp = random_bquadratic_map(&pairing, 1, 0.6, &mut rng).unwrap();
                    // [q, [q', q'']] = [[q, q'], q''] + (-1)^(q q') [q', [q, q'']]
                    let lhs = q.bracket(&qp.bracket(&qpp).unwrap()).unwrap();
                    let t1 = q.bracket(&qp).unwrap().bracket(&qpp).unwrap();
                    let s = int(graded_sign(q.degree(), qp.degree()));
                    let t2 = qp.bracket(&q.bracket(&qpp).unwrap()).unwrap().scale(&s);
                    assert_eq!(lhs, t1.add(&t2).unwrap(), "dim {dim}");
                    triples += 1;
                }
            }
        }
    }

    /// Self-bracket of an even map vanishes by antisymmetry.
    #[test]
    fn even_self_bracket_vanishes() {
        let mut rng = rng_from_seed(316);
        let pairing = random_pairing(&[0, 0, 0], &mut rng);
        for _ in 0..20 {
            let q = random_bquadratic_map(&pairing, 1, 0.6, &mut rng).unwrap();
            if q.degree().rem_euclid(2) == 0 {
                assert!(q.bracket(&q).unwrap().is_zero());
            }
        }
    }
}
