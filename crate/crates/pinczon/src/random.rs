//! Seeded pseudo-random fixtures: homogeneous forms, quadratic maps,
//! pairings and cochains with small integer coefficients. Used by the
//! command line `check-phi` driver and by the test suites; everything is
//! reproducible from an explicit seed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::basis::GradedBasis;
use crate::bracket::{form_of_map, map_of_form, BilinearPairing};
use crate::cohomology::{cochain_subspace, Cochain, CochainFlavor};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::multilinear::{MultilinearForm, MultilinearMap};
use crate::scalar::{int, Rat};

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Uniform over the nonzero integers from -3 to 3.
pub fn small_coeff(rng: &mut ChaCha20Rng) -> Rat {
    let choices = [-3i64, -2, -1, 1, 2, 3];
    int(*choices.choose(rng).expect("nonempty"))
}

fn all_tuples(dim: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    out
}

/// A random homogeneous form: tuples are grouped by total shifted
/// degree, a populous degree class is chosen, and roughly `fill` of its
/// tuples receive small nonzero coefficients.
pub fn random_form(
    basis: &Arc<GradedBasis>,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> MultilinearForm {
    let mut classes: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for t in all_tuples(basis.dim(), arity) {
        classes
            .entry(basis.total_shifted_degree(&t))
            .or_default()
            .push(t);
    }
    let max = classes.values().map(Vec::len).max().unwrap_or(0);
    let eligible: Vec<i64> = classes
        .iter()
        .filter(|(_, v)| v.len() * 2 >= max)
        .map(|(&d, _)| d)
        .collect();
    let class = *eligible.choose(rng).expect("at least one degree class");
    let tuples = &classes[&class];
    loop {
        let mut entries = Vec::new();
        for t in tuples {
            if rng.gen_bool(fill) {
                entries.push((t.clone(), small_coeff(rng)));
            }
        }
        if entries.is_empty() {
            continue;
        }
        return MultilinearForm::from_entries(basis.clone(), arity, -class, entries)
            .expect("homogeneous by construction");
    }
}

const GENERATOR_ATTEMPTS: usize = 200;

/// A random nonzero cyclic form. Panics if the cyclicization of every
/// sampled form vanishes (no nonzero cyclic form of this shape exists).
pub fn random_cyclic_form(
    basis: &Arc<GradedBasis>,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> MultilinearForm {
    for _ in 0..GENERATOR_ATTEMPTS {
        let c = random_form(basis, arity, fill, rng).cyclicize();
        if !c.is_zero() {
            return c;
        }
    }
    panic!("no nonzero cyclic form of arity {arity} found on this basis");
}

/// A random nonzero totally symmetric form. Panics when the symmetric
/// space is (or appears) empty, e.g. arities above the dimension on an
/// all-odd shifted basis where symmetric means alternating.
pub fn random_symmetric_form(
    basis: &Arc<GradedBasis>,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> MultilinearForm {
    for _ in 0..GENERATOR_ATTEMPTS {
        let s = random_form(basis, arity, fill, rng).symmetrize();
        if !s.is_zero() {
            return s;
        }
    }
    panic!("no nonzero symmetric form of arity {arity} found on this basis");
}

/// A random `B`-quadratic map of the given arity, produced by contracting
/// a random cyclic form through the pairing.
pub fn random_bquadratic_map(
    pairing: &BilinearPairing,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> Result<MultilinearMap> {
    let w = random_cyclic_form(pairing.basis(), arity + 1, fill, rng);
    map_of_form(&w, pairing)
}

/// A random totally symmetric `B`-quadratic map.
pub fn random_symmetric_bquadratic_map(
    pairing: &BilinearPairing,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> Result<MultilinearMap> {
    let w = random_symmetric_form(pairing.basis(), arity + 1, fill, rng);
    map_of_form(&w, pairing)
}

/// A random symmetric, degree 0, nondegenerate pairing over the given
/// degrees. The degree multiset must be symmetric under negation.
pub fn random_pairing(degrees: &[i64], rng: &mut ChaCha20Rng) -> BilinearPairing {
    let basis = GradedBasis::with_degrees(degrees.to_vec());
    let dim = basis.dim();
    loop {
        let mut m = QMatrix::zero(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                if basis.degree(i) + basis.degree(j) != 0 {
                    continue;
                }
                let v = int(rng.gen_range(-3..=3i64));
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        if let Ok(p) = BilinearPairing::new(basis.clone(), m) {
            return p;
        }
    }
}

/// Degree vectors used by the randomized suites: mixed even gradings
/// whose multisets are symmetric under negation. Even degrees on `V`
/// keep every shifted degree odd, which is where the shifted pairing
/// `B = eta_2 b` is genuinely symplectic; odd degrees on `V` put part of
/// the space in a sector where `B` turns symmetric and the bracket
/// closure statements no longer hold.
pub fn test_degree_vectors(dim: usize) -> Vec<Vec<i64>> {
    match dim {
        1 => vec![vec![0]],
        2 => vec![vec![0, 0], vec![2, -2]],
        3 => vec![vec![0, 0, 0], vec![0, 2, -2]],
        4 => vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 2, -2],
            vec![2, 2, -2, -2],
            vec![4, 2, -2, -4],
        ],
        n => vec![vec![0; n]],
    }
}

/// Random invertible degree 0 change of basis (block diagonal over the
/// degree decomposition).
pub fn random_degree_zero_change(basis: &Arc<GradedBasis>, rng: &mut ChaCha20Rng) -> QMatrix {
    let dim = basis.dim();
    loop {
        let mut m = QMatrix::zero(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                if basis.degree(i) == basis.degree(j) {
                    m[(i, j)] = int(rng.gen_range(-2..=2i64));
                }
            }
        }
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random `B`-quadratic map together with its form.
pub fn form_of_random_bquadratic(
    pairing: &BilinearPairing,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> Result<(MultilinearMap, MultilinearForm)> {
    let q = random_bquadratic_map(pairing, arity, fill, rng)?;
    let w = form_of_map(&q, pairing)?;
    Ok((q, w))
}

/// A random flavor-valid cochain: raw coefficients uniform over the
/// nonzero integers from -3 to 3 on roughly `fill` of the admissible
/// tuples of one internal degree class, then projected to the flavor
/// subspace (alternation for Chevalley, a combination of a
/// shuffle-vanishing kernel basis for Harrison).
pub fn random_cochain(
    basis: &Arc<GradedBasis>,
    dim_m: usize,
    flavor: CochainFlavor,
    arity: usize,
    fill: f64,
    rng: &mut ChaCha20Rng,
) -> Result<Cochain> {
    if let CochainFlavor::Harrison = flavor {
        if arity >= 2 {
            let subspace = cochain_subspace(basis, dim_m, flavor, arity)?;
            if subspace.is_empty() {
                return Err(Error::InvalidInput("empty harrison cochain space".into()));
            }
            let dim_v = basis.dim();
            let index_unpack = |mut idx: usize| -> (Vec<usize>, usize) {
                let target = idx % dim_m;
                idx /= dim_m;
                let mut tuple = vec![0usize; arity];
                for slot in (0..arity).rev() {
                    tuple[slot] = idx % dim_v;
                    idx /= dim_v;
                }
                (tuple, target)
            };
            for _ in 0..GENERATOR_ATTEMPTS {
                let mut entries: Vec<((Vec<usize>, usize), Rat)> = Vec::new();
                for vector in &subspace {
                    if !rng.gen_bool(0.5) {
                        continue;
                    }
                    let c = small_coeff(rng);
                    for (idx, v) in vector.iter().enumerate() {
                        if !v.is_zero() {
                            entries.push((index_unpack(idx), v * &c));
                        }
                    }
                }
                let cochain = Cochain::from_entries(arity, flavor, entries)?;
                if !cochain.is_zero() {
                    return Ok(cochain);
                }
            }
            return Err(Error::InvalidInput(
                "no nonzero harrison cochain found".into(),
            ));
        }
    }
    for _ in 0..GENERATOR_ATTEMPTS {
        // raw entries on one internal degree class
        let mut classes: BTreeMap<i64, Vec<(Vec<usize>, usize)>> = BTreeMap::new();
        for t in all_tuples(basis.dim(), arity) {
            let input: i64 = t.iter().map(|&i| basis.degree(i)).sum();
            for target in 0..dim_m {
                // module fixtures in this crate are ungraded; class by input
                classes.entry(-input).or_default().push((t.clone(), target));
            }
        }
        let max = classes.values().map(Vec::len).max().unwrap_or(0);
        let eligible: Vec<i64> = classes
            .iter()
            .filter(|(_, v)| v.len() * 2 >= max)
            .map(|(&d, _)| d)
            .collect();
        let class = *eligible.choose(rng).expect("degree class");
        let mut entries: Vec<((Vec<usize>, usize), Rat)> = Vec::new();
        for key in &classes[&class] {
            if rng.gen_bool(fill) {
                entries.push((key.clone(), small_coeff(rng)));
            }
        }
        let raw = Cochain::from_entries(arity, flavor, entries)?;
        let cochain = match flavor {
            CochainFlavor::Hochschild | CochainFlavor::Harrison => raw,
            CochainFlavor::Chevalley => {
                // unnormalized alternation over all input permutations
                let mut total = Cochain::zero(arity, flavor);
                for sigma in crate::sign::Permutation::all(arity) {
                    let term = raw.permute_inputs(basis, &sigma)?;
                    for (k, v) in term.coeffs {
                        let entry = total.coeffs.entry(k).or_insert_with(Rat::zero);
                        *entry += v;
                    }
                }
                total.coeffs.retain(|_, v| !v.is_zero());
                total
            }
        };
        if !cochain.is_zero() {
            return Ok(cochain);
        }
    }
    Err(Error::InvalidInput("no nonzero cochain found".into()))
}
