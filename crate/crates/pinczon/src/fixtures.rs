//! Standard quadratic algebras and modules used across the test suites
//! and handy as programmatic examples: sl(2) with its Killing form, the
//! 2x2 matrix algebra with the trace form, diagonal algebras, and small
//! abelian Lie algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::basis::GradedBasis;
use crate::cohomology::ModuleData;
use crate::error::Result;
use crate::linalg::QMatrix;
use crate::multilinear::VLevelMap;
use crate::scalar::{int, Rat};
use crate::structure::{load_structure, Flavor, QuadraticStructure};

/// Basis `e, f, h` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2_basis() -> Arc<GradedBasis> {
    GradedBasis::new(vec!["e".into(), "f".into(), "h".into()], vec![0, 0, 0]).unwrap()
}

fn sl2_bracket(basis: &Arc<GradedBasis>) -> VLevelMap {
    // indices: e = 0, f = 1, h = 2
    VLevelMap::from_entries(
        basis.clone(),
        2,
        0,
        [
            ((vec![0, 1], 2), int(1)),
            ((vec![1, 0], 2), int(-1)),
            ((vec![2, 0], 0), int(2)),
            ((vec![0, 2], 0), int(-2)),
            ((vec![2, 1], 1), int(-2)),
            ((vec![1, 2], 1), int(2)),
        ],
    )
    .unwrap()
}

/// The Killing form of sl(2) in the `e, f, h` basis: `K(e,f) = 4`,
/// `K(h,h) = 8`.
pub fn sl2_killing_matrix() -> QMatrix {
    QMatrix::from_rows(vec![
        vec![int(0), int(4), int(0)],
        vec![int(4), int(0), int(0)],
        vec![int(0), int(0), int(8)],
    ])
    .unwrap()
}

/// sl(2) with the Killing form, as a quadratic Lie structure.
pub fn sl2_killing() -> QuadraticStructure {
    sl2_with_pairing(sl2_killing_matrix())
}

/// sl(2) with an arbitrary symmetric invertible pairing (not necessarily
/// invariant).
pub fn sl2_with_pairing(pairing: QMatrix) -> QuadraticStructure {
    let basis = sl2_basis();
    let q = sl2_bracket(&basis);
    load_structure(basis, pairing, Flavor::Lie, vec![q]).unwrap()
}

/// The adjoint module of sl(2): `x . a = [x, a]` on sl(2) itself.
pub fn sl2_adjoint_module() -> ModuleData {
    let basis = sl2_basis();
    let module_basis = GradedBasis::new(
        vec!["a_e".into(), "a_f".into(), "a_h".into()],
        vec![0, 0, 0],
    )
    .unwrap();
    let bracket = sl2_bracket(&basis);
    let mut left: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
    for v in 0..3 {
        for a in 0..3 {
            let mut coords = vec![int(0); 3];
            for ((key, out), c) in &bracket.coeffs {
                if key[0] == v && key[1] == a {
                    coords[*out] = c.clone();
                }
            }
            left.insert((v, a), coords);
        }
    }
    ModuleData::new(module_basis, left, None)
}

/// The 2x2 matrix algebra in the elementary basis `E11, E12, E21, E22`
/// with the trace form `b(x, y) = tr(xy)`.
pub fn mat2_trace() -> QuadraticStructure {
    let basis = GradedBasis::new(
        vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
        vec![0, 0, 0, 0],
    )
    .unwrap();
    // E_{ij} E_{kl} = delta_{jk} E_{il}; index (i,j) -> 2(i-1) + (j-1)
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut entries = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                entries.push(((vec![idx(i, j), idx(j, l)], idx(i, l)), int(1)));
            }
        }
    }
    let q = VLevelMap::from_entries(basis.clone(), 2, 0, entries).unwrap();
    // tr(E_{ij} E_{kl}) = delta_{jk} delta_{il}
    let mut b = QMatrix::zero(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            b[(idx(i, j), idx(j, i))] = int(1);
        }
    }
    load_structure(basis, b, Flavor::Associative, vec![q]).unwrap()
}

/// The regular bimodule of the 2x2 matrix algebra: the algebra acting on
/// itself by left and right multiplication.
pub fn mat2_regular_bimodule() -> ModuleData {
    let module_basis = GradedBasis::new(
        vec!["M11".into(), "M12".into(), "M21".into(), "M22".into()],
        vec![0, 0, 0, 0],
    )
    .unwrap();
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut left: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
    let mut right: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            for kk in 0..2 {
                for l in 0..2 {
                    // E_{ij} . M_{kl} = delta_{jk} M_{il}
                    let mut coords = vec![int(0); 4];
                    if j == kk {
                        coords[idx(i, l)] = int(1);
                    }
                    left.insert((idx(i, j), idx(kk, l)), coords);
                    // M_{kl} . E_{ij} = delta_{li} M_{kj}
                    let mut coords = vec![int(0); 4];
                    if l == i {
                        coords[idx(kk, j)] = int(1);
                    }
                    right.insert((idx(kk, l), idx(i, j)), coords);
                }
            }
        }
    }
    ModuleData::new(module_basis, left, Some(right))
}

/// The commutative algebra of diagonal k x k matrices with the identity
/// pairing: `d_i d_j = delta_ij d_i`.
pub fn diagonal_algebra(k: usize) -> QuadraticStructure {
    let basis = GradedBasis::ungraded(k);
    let entries: Vec<((Vec<usize>, usize), Rat)> =
        (0..k).map(|i| ((vec![i, i], i), int(1))).collect();
    let q = VLevelMap::from_entries(basis.clone(), 2, 0, entries).unwrap();
    load_structure(basis, QMatrix::identity(k), Flavor::Commutative, vec![q]).unwrap()
}

/// The regular module of the diagonal algebra (acting on itself).
pub fn diagonal_regular_module(k: usize) -> ModuleData {
    let module_basis =
        GradedBasis::new((1..=k).map(|i| format!("m{i}")).collect(), vec![0; k]).unwrap();
    let mut left: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
    for v in 0..k {
        for a in 0..k {
            let mut coords = vec![int(0); k];
            if v == a {
                coords[a] = int(1);
            }
            left.insert((v, a), coords);
        }
    }
    ModuleData::new(module_basis, left, None)
}

/// Abelian Lie algebra of the given dimension with the identity pairing.
pub fn abelian_lie(dim: usize) -> QuadraticStructure {
    let basis = GradedBasis::ungraded(dim);
    let q = VLevelMap::from_entries(basis.clone(), 2, 0, []).unwrap();
    load_structure(basis, QMatrix::identity(dim), Flavor::Lie, vec![q]).unwrap()
}

/// The trivial module of the stated dimension (all actions zero).
pub fn trivial_module(dim: usize) -> ModuleData {
    let module_basis =
        GradedBasis::new((1..=dim).map(|i| format!("t{i}")).collect(), vec![0; dim]).unwrap();
    ModuleData::new(module_basis, BTreeMap::new(), None)
}

/// Sanity constructor shared by tests that need any valid module.
pub fn module_from_tables(
    module_basis: Arc<GradedBasis>,
    left: BTreeMap<(usize, usize), Vec<Rat>>,
    right: Option<BTreeMap<(usize, usize), Vec<Rat>>>,
) -> Result<ModuleData> {
    Ok(ModuleData::new(module_basis, left, right))
}
