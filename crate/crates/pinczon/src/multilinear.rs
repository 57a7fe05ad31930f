//! Sparse multilinear forms and maps on the shifted space `V[1]`.
//!
//! Both containers are keyed by basis index tuples, store no zero
//! coefficients, iterate in lexicographic key order, and enforce
//! homogeneity on construction: a degree `d` form vanishes off total
//! shifted degree `-d`, and a degree `d` map sends a tuple of total
//! shifted degree `s` into the component of shifted degree `s + d`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::basis::GradedBasis;
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::sign::{eta, koszul_sign, subsets_of_size, Permutation};

/// Scalar-valued `arity`-linear form on `V[1]`, homogeneous of `degree`.
/// Zero forms compare equal whatever their declared degree.
#[derive(Debug, Clone)]
pub struct MultilinearForm {
    basis: Arc<GradedBasis>,
    arity: usize,
    degree: i64,
    coeffs: BTreeMap<Vec<usize>, Rat>,
}

/// `arity`-linear map `V[1]^arity -> V[1]`, homogeneous of `degree`;
/// the Taylor coefficient of a coderivation. Zero maps compare equal
/// whatever their declared degree.
#[derive(Debug, Clone)]
pub struct MultilinearMap {
    basis: Arc<GradedBasis>,
    arity: usize,
    degree: i64,
    coeffs: BTreeMap<(Vec<usize>, usize), Rat>,
}

/// `arity`-linear map on `V` itself, in unshifted degrees: the ingestion
/// and emission view of structure constants. [`shift_map`] converts it to
/// the internal `V[1]` representation.
#[derive(Debug, Clone, PartialEq)]
pub struct VLevelMap {
    pub basis: Arc<GradedBasis>,
    pub arity: usize,
    /// Degree as a map on `V`.
    pub degree: i64,
    pub coeffs: BTreeMap<(Vec<usize>, usize), Rat>,
}

impl PartialEq for MultilinearForm {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.arity == other.arity
            && self.coeffs == other.coeffs
            && (self.degree == other.degree || self.coeffs.is_empty())
    }
}

impl PartialEq for MultilinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.arity == other.arity
            && self.coeffs == other.coeffs
            && (self.degree == other.degree || self.coeffs.is_empty())
    }
}

impl MultilinearForm {
    pub fn zero(basis: Arc<GradedBasis>, arity: usize, degree: i64) -> Self {
        MultilinearForm {
            basis,
            arity,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// A scalar as a 0-arity form. Nonzero scalars have degree 0.
    pub fn scalar(basis: Arc<GradedBasis>, value: Rat) -> Self {
        let mut f = MultilinearForm::zero(basis, 0, 0);
        if !value.is_zero() {
            f.coeffs.insert(Vec::new(), value);
        }
        f
    }

    pub fn from_entries(
        basis: Arc<GradedBasis>,
        arity: usize,
        degree: i64,
        entries: impl IntoIterator<Item = (Vec<usize>, Rat)>,
    ) -> Result<Self> {
        let mut form = MultilinearForm::zero(basis, arity, degree);
        for (key, value) in entries {
            form.check_key(&key)?;
            form.add_coeff(key, value)?;
        }
        Ok(form)
    }

    fn check_key(&self, key: &[usize]) -> Result<()> {
        if key.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: key.len(),
            });
        }
        if let Some(&i) = key.iter().find(|&&i| i >= self.basis.dim()) {
            return Err(Error::InvalidInput(format!(
                "basis index {i} out of range for dimension {}",
                self.basis.dim()
            )));
        }
        Ok(())
    }

    fn add_coeff(&mut self, key: Vec<usize>, value: Rat) -> Result<()> {
        if value.is_zero() {
            return Ok(());
        }
        if self.basis.total_shifted_degree(&key) + self.degree != 0 {
            return Err(Error::Inhomogeneous(format!(
                "tuple {key:?} has total shifted degree {}, form degree {}",
                self.basis.total_shifted_degree(&key),
                self.degree
            )));
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Rat)> {
        self.coeffs.iter()
    }

    /// Value of the constant 0-arity form.
    pub fn scalar_value(&self) -> Rat {
        self.coeffs
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Coefficient lookup on a basis tuple; 0 when absent.
    pub fn evaluate(&self, tuple: &[usize]) -> Result<Rat> {
        self.check_key(tuple)?;
        Ok(self.coeffs.get(tuple).cloned().unwrap_or_else(Rat::zero))
    }

    fn same_basis(&self, other: &MultilinearForm) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.same_basis(other)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Inhomogeneous("sum of unequal degrees".into()));
        }
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut out = MultilinearForm::zero(self.basis.clone(), self.arity, degree);
        for (k, v) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_coeff(k.clone(), v.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rat) -> MultilinearForm {
        let mut out = MultilinearForm::zero(self.basis.clone(), self.arity, self.degree);
        if factor.is_zero() {
            return out;
        }
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v * factor);
        }
        out
    }

    pub fn sub(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.add(&other.scale(&-num_traits::one::<Rat>()))
    }

    /// Signed permutation action: `(f^tau)(x) = koszul(tau; x) f(tau . x)`.
    pub fn permute(&self, tau: &Permutation) -> Result<MultilinearForm> {
        if tau.len() != self.arity {
            return Err(Error::LengthMismatch(format!(
                "permutation of {} on arity {}",
                tau.len(),
                self.arity
            )));
        }
        let mut out = MultilinearForm::zero(self.basis.clone(), self.arity, self.degree);
        for (key, value) in &self.coeffs {
            // contributes at t with tau . t = key, i.e. t[i] = key[tau(i)]
            let t: Vec<usize> = (0..self.arity).map(|i| key[tau.apply(i)]).collect();
            let sign = koszul_sign(&self.basis.shifted_degrees_of(&t), tau)?;
            out.add_coeff(t, signed(value, sign))?;
        }
        Ok(out)
    }

    /// Sum of the signed rotations of the arguments over the full cyclic
    /// group of the arity (unnormalized: `arity` terms).
    pub fn cyclicize(&self) -> MultilinearForm {
        if self.arity <= 1 {
            return self.clone();
        }
        let rho = Permutation::rotation(self.arity);
        let mut out = self.clone();
        let mut power = rho.clone();
        for _ in 1..self.arity {
            out = out
                .add(&self.permute(&power).expect("arity matches"))
                .expect("same shape");
            power = power.compose(&rho);
        }
        out
    }

    /// Whether the form is fixed by the generator rotation (with sign).
    pub fn is_cyclic(&self) -> bool {
        if self.arity <= 1 {
            return true;
        }
        let rho = Permutation::rotation(self.arity);
        self.permute(&rho).map(|r| r == *self).unwrap_or(false)
    }

    /// A witness tuple where cyclicity fails, with the two values.
    pub fn cyclic_defect_witness(&self) -> Option<(Vec<usize>, Rat, Rat)> {
        if self.arity <= 1 {
            return None;
        }
        let rho = Permutation::rotation(self.arity);
        let rotated = self.permute(&rho).ok()?;
        for (key, value) in rotated.coeffs.iter().chain(self.coeffs.iter()) {
            let a = self.coeffs.get(key).cloned().unwrap_or_else(Rat::zero);
            let b = rotated.coeffs.get(key).cloned().unwrap_or_else(Rat::zero);
            if a != b {
                return Some((key.clone(), a, b));
            }
            let _ = value;
        }
        None
    }

    /// Concatenation tensor product: `(f (x) g)(x_1..x_{p+q}) =
    /// f(x_1..x_p) g(x_{p+1}..x_{p+q})`, no extra sign.
    pub fn tensor(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.same_basis(other)?;
        let mut out = MultilinearForm::zero(
            self.basis.clone(),
            self.arity + other.arity,
            self.degree + other.degree,
        );
        for (k1, v1) in &self.coeffs {
            for (k2, v2) in &other.coeffs {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_coeff(key, v1 * v2)?;
            }
        }
        Ok(out)
    }

    /// The cyclic product: cyclicization of the tensor product. Graded
    /// commutative but not associative.
    pub fn cyclic_product(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        Ok(self.tensor(other)?.cyclicize())
    }

    /// Interior product with a basis vector in the first slot:
    /// `(i_e f)(x_1..x_{k-1}) = f(e, x_1..x_{k-1})`.
    pub fn interior(&self, index: usize) -> Result<MultilinearForm> {
        if self.arity == 0 {
            return Err(Error::InvalidInput("interior product of a 0-form".into()));
        }
        let mut out = MultilinearForm::zero(
            self.basis.clone(),
            self.arity - 1,
            self.degree + self.basis.shifted_degree(index),
        );
        for (key, value) in &self.coeffs {
            if key[0] == index {
                out.add_coeff(key[1..].to_vec(), value.clone())?;
            }
        }
        Ok(out)
    }

    /// Interior product with a general vector `v = sum_i coords[i] e_i`.
    pub fn interior_vector(&self, coords: &[Rat]) -> Result<MultilinearForm> {
        if coords.len() != self.basis.dim() {
            return Err(Error::LengthMismatch("vector length vs basis".into()));
        }
        if self.arity == 0 {
            return Err(Error::InvalidInput("interior product of a 0-form".into()));
        }
        let mut out: Option<MultilinearForm> = None;
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.interior(i)?.scale(c);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term)?,
            });
        }
        Ok(out.unwrap_or_else(|| {
            MultilinearForm::zero(self.basis.clone(), self.arity - 1, self.degree)
        }))
    }

    /// The shuffle-vanishing defect at split `p`: the signed sum of the
    /// `(p, q)`-shuffles of the first `arity - 1` slots, last slot fixed.
    /// The form vanishes on shuffle products at this split iff the defect
    /// is identically zero.
    pub fn shuffle_defect(&self, p: usize) -> Result<MultilinearForm> {
        if self.arity < 2 {
            return Err(Error::InvalidInput(
                "shuffle defect needs arity >= 2".into(),
            ));
        }
        let m = self.arity - 1;
        if p == 0 || p >= m {
            return Err(Error::InvalidInput(format!(
                "split {p} out of range 0 < p < {m}"
            )));
        }
        let mut out = MultilinearForm::zero(self.basis.clone(), self.arity, self.degree);
        for sigma in Permutation::shuffles(p, m - p) {
            // extend to the full arity, fixing the last slot
            let mut images: Vec<usize> = (0..self.arity).collect();
            for i in 0..m {
                images[i] = sigma.apply(i);
            }
            let extended = Permutation::from_images(images)?;
            out = out.add(&self.permute(&extended)?)?;
        }
        Ok(out)
    }

    /// Whether all shuffle-vanishing defects are zero.
    pub fn vanishes_on_shuffles(&self) -> bool {
        if self.arity < 3 {
            return true;
        }
        (1..self.arity - 1).all(|p| self.shuffle_defect(p).map(|d| d.is_zero()).unwrap_or(false))
    }

    /// Sum of all signed permutations of the arguments (unnormalized:
    /// `arity!` terms; a symmetric form gains a factor `arity!`).
    pub fn symmetrize(&self) -> MultilinearForm {
        let mut out = MultilinearForm::zero(self.basis.clone(), self.arity, self.degree);
        for sigma in Permutation::all(self.arity) {
            out = out
                .add(&self.permute(&sigma).expect("arity matches"))
                .expect("same shape");
        }
        out
    }

    /// Fixed by every transposition, with Koszul signs.
    pub fn is_symmetric(&self) -> bool {
        if self.arity <= 1 {
            return true;
        }
        (0..self.arity - 1).all(|i| {
            let tau = Permutation::transposition(self.arity, i, i + 1);
            self.permute(&tau).map(|r| r == *self).unwrap_or(false)
        })
    }

    /// Symmetrized tensor product (the product of the symmetric world).
    pub fn sym_product(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        Ok(self.tensor(other)?.symmetrize())
    }
}

impl MultilinearMap {
    pub fn zero(basis: Arc<GradedBasis>, arity: usize, degree: i64) -> Self {
        MultilinearMap {
            basis,
            arity,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        basis: Arc<GradedBasis>,
        arity: usize,
        degree: i64,
        entries: impl IntoIterator<Item = ((Vec<usize>, usize), Rat)>,
    ) -> Result<Self> {
        let mut map = MultilinearMap::zero(basis, arity, degree);
        for ((key, out), value) in entries {
            map.check_key(&key, out)?;
            map.add_coeff(key, out, value)?;
        }
        Ok(map)
    }

    /// The identity map, arity 1, degree 0.
    pub fn identity(basis: Arc<GradedBasis>) -> Self {
        let dim = basis.dim();
        let mut map = MultilinearMap::zero(basis, 1, 0);
        for i in 0..dim {
            map.coeffs.insert((vec![i], i), num_traits::one());
        }
        map
    }

    fn check_key(&self, key: &[usize], out: usize) -> Result<()> {
        if key.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: key.len(),
            });
        }
        if key.iter().any(|&i| i >= self.basis.dim()) || out >= self.basis.dim() {
            return Err(Error::InvalidInput("basis index out of range".into()));
        }
        Ok(())
    }

    fn add_coeff(&mut self, key: Vec<usize>, out: usize, value: Rat) -> Result<()> {
        if value.is_zero() {
            return Ok(());
        }
        let input_degree = self.basis.total_shifted_degree(&key);
        if self.basis.shifted_degree(out) != self.degree + input_degree {
            return Err(Error::Inhomogeneous(format!(
                "entry {key:?} -> {out} breaks degree {} homogeneity",
                self.degree
            )));
        }
        match self.coeffs.entry((key, out)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Vec<usize>, usize), &Rat)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, key: &[usize], out: usize) -> Rat {
        self.coeffs
            .get(&(key.to_vec(), out))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Output vector on a basis tuple, as coordinates.
    pub fn apply_basis(&self, key: &[usize]) -> Result<Vec<Rat>> {
        if key.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: key.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.basis.dim()];
        for j in 0..self.basis.dim() {
            let c = self.coefficient(key, j);
            if !c.is_zero() {
                out[j] = c;
            }
        }
        Ok(out)
    }

    fn same_basis(&self, other: &MultilinearMap) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        self.same_basis(other)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Inhomogeneous("sum of unequal degrees".into()));
        }
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let mut out = MultilinearMap::zero(self.basis.clone(), self.arity, degree);
        for ((k, j), v) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_coeff(k.clone(), *j, v.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rat) -> MultilinearMap {
        let mut out = MultilinearMap::zero(self.basis.clone(), self.arity, self.degree);
        if factor.is_zero() {
            return out;
        }
        for ((k, j), v) in &self.coeffs {
            out.coeffs.insert((k.clone(), *j), v * factor);
        }
        out
    }

    pub fn sub(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        self.add(&other.scale(&-num_traits::one::<Rat>()))
    }

    /// Signed permutation action on the input slots.
    pub fn permute_inputs(&self, tau: &Permutation) -> Result<MultilinearMap> {
        if tau.len() != self.arity {
            return Err(Error::LengthMismatch(format!(
                "permutation of {} on arity {}",
                tau.len(),
                self.arity
            )));
        }
        let mut out = MultilinearMap::zero(self.basis.clone(), self.arity, self.degree);
        for ((key, j), value) in &self.coeffs {
            let t: Vec<usize> = (0..self.arity).map(|i| key[tau.apply(i)]).collect();
            let sign = koszul_sign(&self.basis.shifted_degrees_of(&t), tau)?;
            out.add_coeff(t, *j, signed(value, sign))?;
        }
        Ok(out)
    }

    /// Precomposition with the unnormalized symmetrization: the sum of
    /// all signed input permutations (`arity!` terms).
    pub fn symmetrize(&self) -> MultilinearMap {
        let mut out = MultilinearMap::zero(self.basis.clone(), self.arity, self.degree);
        for sigma in Permutation::all(self.arity) {
            out = out
                .add(&self.permute_inputs(&sigma).expect("arity matches"))
                .expect("same shape");
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.arity <= 1 {
            return true;
        }
        (0..self.arity - 1).all(|i| {
            let tau = Permutation::transposition(self.arity, i, i + 1);
            self.permute_inputs(&tau)
                .map(|r| r == *self)
                .unwrap_or(false)
        })
    }

    /// Insertion composition: `Q o Q'` inserts `Q'` into every slot of
    /// `Q`, with the Koszul sign for carrying `Q'` past the skipped
    /// prefix arguments.
    pub fn compose(&self, inner: &MultilinearMap) -> Result<MultilinearMap> {
        self.same_basis(inner)?;
        let k = self.arity;
        let kp = inner.arity;
        if k == 0 {
            return Ok(MultilinearMap::zero(
                self.basis.clone(),
                0,
                self.degree + inner.degree,
            ));
        }
        let mut out =
            MultilinearMap::zero(self.basis.clone(), k + kp - 1, self.degree + inner.degree);
        let inner_parity = inner.degree.rem_euclid(2);
        for ((outer_key, outer_out), outer_val) in &self.coeffs {
            for r in 0..k {
                for ((inner_key, inner_out), inner_val) in &inner.coeffs {
                    if outer_key[r] != *inner_out {
                        continue;
                    }
                    let mut key = Vec::with_capacity(k + kp - 1);
                    key.extend_from_slice(&outer_key[..r]);
                    key.extend_from_slice(inner_key);
                    key.extend_from_slice(&outer_key[r + 1..]);
                    let prefix_parity: i64 = outer_key[..r]
                        .iter()
                        .map(|&i| self.basis.shifted_degree(i))
                        .sum::<i64>()
                        .rem_euclid(2);
                    let sign = if inner_parity * prefix_parity % 2 != 0 {
                        -1
                    } else {
                        1
                    };
                    out.add_coeff(key, *outer_out, signed(&(outer_val * inner_val), sign))?;
                }
            }
        }
        Ok(out)
    }

    /// Graded commutator of coderivation coefficients:
    /// `[Q, Q'] = Q o Q' - (-1)^(deg Q deg Q') Q' o Q`.
    pub fn bracket(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        let left = self.compose(other)?;
        let right = other.compose(self)?;
        let sign = if (self.degree * other.degree).rem_euclid(2) != 0 {
            1
        } else {
            -1
        };
        left.add(&right.scale(&crate::scalar::int(sign)))
    }

    /// Coderivation bracket on the symmetric coalgebra, by direct subset
    /// splittings. Both inputs must be totally symmetric.
    pub fn bracket_sym(&self, other: &MultilinearMap) -> Result<MultilinearMap> {
        self.same_basis(other)?;
        if !self.is_symmetric() || !other.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let part = |outer: &MultilinearMap, inner: &MultilinearMap| -> Result<MultilinearMap> {
            let k = outer.arity;
            let kp = inner.arity;
            let n = k + kp - 1;
            let mut acc = MultilinearMap::zero(outer.basis.clone(), n, outer.degree + inner.degree);
            if k == 0 {
                return Ok(acc);
            }
            for ((inner_key, inner_out), inner_val) in &inner.coeffs {
                for ((outer_key, outer_out), outer_val) in &outer.coeffs {
                    if outer_key[0] != *inner_out {
                        continue;
                    }
                    let rest = &outer_key[1..];
                    // distribute inner's inputs over a position subset J,
                    // outer's remaining inputs over the complement
                    for positions in subsets_of_size(n, kp) {
                        let mut tuple = vec![0usize; n];
                        let mut in_j = vec![false; n];
                        for (m, &pos) in positions.iter().enumerate() {
                            tuple[pos] = inner_key[m];
                            in_j[pos] = true;
                        }
                        let mut rest_iter = rest.iter();
                        for (pos, slot) in tuple.iter_mut().enumerate() {
                            if !in_j[pos] {
                                *slot = *rest_iter.next().expect("complement size");
                            }
                        }
                        // unshuffle moving the J block to the front
                        let mut images = vec![0usize; n];
                        let mut jm = 0usize;
                        let mut im = 0usize;
                        for (pos, &flag) in in_j.iter().enumerate() {
                            if flag {
                                images[pos] = jm;
                                jm += 1;
                            } else {
                                images[pos] = kp + im;
                                im += 1;
                            }
                        }
                        let unshuffle = Permutation::from_images(images)?;
                        let sign = koszul_sign(&acc.basis.shifted_degrees_of(&tuple), &unshuffle)?;
                        acc.add_coeff(tuple, *outer_out, signed(&(outer_val * inner_val), sign))?;
                    }
                }
            }
            Ok(acc)
        };
        let left = part(self, other)?;
        let right = part(other, self)?;
        let sign = if (self.degree * other.degree).rem_euclid(2) != 0 {
            1
        } else {
            -1
        };
        left.add(&right.scale(&crate::scalar::int(sign)))
    }
}

impl VLevelMap {
    pub fn from_entries(
        basis: Arc<GradedBasis>,
        arity: usize,
        degree: i64,
        entries: impl IntoIterator<Item = ((Vec<usize>, usize), Rat)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for ((key, out), value) in entries {
            if value.is_zero() {
                continue;
            }
            if key.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: key.len(),
                });
            }
            if key.iter().any(|&i| i >= basis.dim()) || out >= basis.dim() {
                return Err(Error::InvalidInput("basis index out of range".into()));
            }
            let input: i64 = key.iter().map(|&i| basis.degree(i)).sum();
            if basis.degree(out) != degree + input {
                return Err(Error::Inhomogeneous(format!(
                    "entry {key:?} -> {out} breaks V-level degree {degree}"
                )));
            }
            let entry = coeffs.entry((key, out)).or_insert_with(Rat::zero);
            *entry += value;
        }
        coeffs.retain(|_, v: &mut Rat| !v.is_zero());
        Ok(VLevelMap {
            basis,
            arity,
            degree,
            coeffs,
        })
    }
}

/// Converts a map on `V` to the corresponding map on `V[1]`: each
/// coefficient picks up `eta_k` on the input tuple's shifted degrees,
/// and the degree becomes `|q| + k - 1`.
pub fn shift_map(q: &VLevelMap) -> Result<MultilinearMap> {
    let k = q.arity as i64;
    let mut out = MultilinearMap::zero(q.basis.clone(), q.arity, q.degree + k - 1);
    for ((key, j), value) in &q.coeffs {
        let sign = eta(k, &q.basis.shifted_degrees_of(key));
        out.add_coeff(key.clone(), *j, signed(value, sign))?;
    }
    Ok(out)
}

/// Inverse of [`shift_map`]: `unshift_map(shift_map(q)) = q`.
pub fn unshift_map(q: &MultilinearMap) -> Result<VLevelMap> {
    let k = q.arity as i64;
    let entries: Vec<((Vec<usize>, usize), Rat)> = q
        .coeffs
        .iter()
        .map(|((key, j), value)| {
            let sign = eta(k, &q.basis.shifted_degrees_of(key));
            ((key.clone(), *j), signed(value, sign))
        })
        .collect();
    VLevelMap::from_entries(q.basis.clone(), q.arity, q.degree - k + 1, entries)
}

fn signed(value: &Rat, sign: i64) -> Rat {
    if sign >= 0 {
        value.clone()
    } else {
        -value.clone()
    }
}
