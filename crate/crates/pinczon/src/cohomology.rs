//! Module-valued cohomology through the double semidirect product:
//! building the quadratic algebra on `W x W*` for `W = V x M`, lifting
//! cochains to quadratic maps, the Hochschild / Harrison / Chevalley
//! coboundaries, the bracket-side differential, and Betti numbers over
//! the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::basis::GradedBasis;
use crate::bracket::{form_of_map, map_of_form, pinczon_bracket, pinczon_bracket_sym};
use crate::error::{Error, Result};
use crate::linalg::{rank_and_kernel, rational_rank, QMatrix};
use crate::multilinear::{shift_map, MultilinearForm, MultilinearMap, VLevelMap};
use crate::scalar::{int, rat, Rat};
use crate::sign::{koszul_sign, Permutation};
use crate::structure::{
    load_structure, structure_equation, Flavor, QuadraticStructure, ValidationReport,
};

/// A finite-dimensional module (bimodule for the associative flavor)
/// given by action constants: `left[(v, m)] = v . m` and
/// `right[(m, v)] = m . v` as coordinate vectors over the module basis.
/// The right action is absent for Lie modules and equal to the left one
/// for modules over commutative algebras.
#[derive(Debug, Clone)]
pub struct ModuleData {
    basis: Arc<GradedBasis>,
    left: BTreeMap<(usize, usize), Vec<Rat>>,
    right: Option<BTreeMap<(usize, usize), Vec<Rat>>>,
}

impl ModuleData {
    pub fn new(
        basis: Arc<GradedBasis>,
        left: BTreeMap<(usize, usize), Vec<Rat>>,
        right: Option<BTreeMap<(usize, usize), Vec<Rat>>>,
    ) -> Self {
        ModuleData { basis, left, right }
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `v . m` as coordinates over the module basis.
    pub fn left_action(&self, v: usize, m: usize) -> Vec<Rat> {
        self.left
            .get(&(v, m))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.dim()])
    }

    /// `m . v`; the left action when no right action is stored.
    pub fn right_action(&self, m: usize, v: usize) -> Vec<Rat> {
        match &self.right {
            Some(r) => r
                .get(&(m, v))
                .cloned()
                .unwrap_or_else(|| vec![Rat::zero(); self.dim()]),
            None => self.left_action(v, m),
        }
    }

    pub fn has_right_action(&self) -> bool {
        self.right.is_some()
    }
}

/// Dense multiplication and action tables for a strict structure and a
/// module over it; everything downstream reads these.
struct Tables {
    dim_v: usize,
    dim_m: usize,
    /// `product[i][j]` = coordinates of `q(e_i, e_j)` over `V`.
    product: Vec<Vec<Vec<Rat>>>,
    /// `left[i][p]` = coordinates of `e_i . m_p` over `M`.
    left: Vec<Vec<Vec<Rat>>>,
    /// `right[p][i]` = coordinates of `m_p . e_i` over `M`.
    right: Vec<Vec<Vec<Rat>>>,
}

impl Tables {
    fn new(s: &QuadraticStructure, m: &ModuleData) -> Result<Tables> {
        if !s.flavor().is_strict() {
            return Err(Error::FlavorMismatch(
                "module constructions need a strict structure".into(),
            ));
        }
        let q = &s.unshifted()?[0];
        let dim_v = s.basis().dim();
        let dim_m = m.dim();
        let mut product = vec![vec![vec![Rat::zero(); dim_v]; dim_v]; dim_v];
        for ((key, out), v) in &q.coeffs {
            product[key[0]][key[1]][*out] = v.clone();
        }
        let left = (0..dim_v)
            .map(|i| (0..dim_m).map(|p| m.left_action(i, p)).collect())
            .collect();
        let right = (0..dim_m)
            .map(|p| (0..dim_v).map(|i| m.right_action(p, i)).collect())
            .collect();
        Ok(Tables {
            dim_v,
            dim_m,
            product,
            left,
            right,
        })
    }

    fn left_vec(&self, i: usize, a: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim_m];
        for (p, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, v) in self.left[i][p].iter().enumerate() {
                out[t] = &out[t] + &(c * v);
            }
        }
        out
    }

    fn right_vec(&self, a: &[Rat], i: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim_m];
        for (p, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, v) in self.right[p][i].iter().enumerate() {
                out[t] = &out[t] + &(c * v);
            }
        }
        out
    }
}

/// Exact check of the module axioms on basis triples: associativity of
/// the actions for the associative and commutative flavors,
/// `[x,y].a = x.(y.a) - (-1)^(|x||y|) y.(x.a)` for the Lie flavor.
pub fn check_module(s: &QuadraticStructure, m: &ModuleData) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let t = Tables::new(s, m)?;
    let vb = s.basis();
    let lie = s.flavor() == Flavor::Lie;
    if s.flavor() == Flavor::Commutative && m.has_right_action() {
        // for commutative algebras the two actions must agree
        let mut agree = true;
        for i in 0..t.dim_v {
            for p in 0..t.dim_m {
                if m.left_action(i, p) != m.right_action(p, i) {
                    agree = false;
                }
            }
        }
        report.push(
            "module-actions-agree",
            agree,
            "left and right actions coincide",
        );
    }
    let mut ok_left = true;
    let mut ok_right = true;
    let mut ok_mixed = true;
    let mut witness: Option<String> = None;
    for i in 0..t.dim_v {
        for j in 0..t.dim_v {
            for p in 0..t.dim_m {
                let mut unit_m = vec![Rat::zero(); t.dim_m];
                unit_m[p] = int(1);
                if lie {
                    // [e_i, e_j] . m_p
                    let mut lhs = vec![Rat::zero(); t.dim_m];
                    for (z, c) in t.product[i][j].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (u, v) in t.left_vec(z, &unit_m).iter().enumerate() {
                            lhs[u] = &lhs[u] + &(c * v);
                        }
                    }
                    let xy = t.left_vec(i, &t.left_vec(j, &unit_m));
                    let yx = t.left_vec(j, &t.left_vec(i, &unit_m));
                    let sign = if (vb.degree(i) * vb.degree(j)).rem_euclid(2) == 1 {
                        -1
                    } else {
                        1
                    };
                    let ok = (0..t.dim_m)
                        .all(|u| lhs[u].clone() == xy[u].clone() - int(sign) * yx[u].clone());
                    if !ok {
                        ok_left = false;
                        witness.get_or_insert_with(|| {
                            format!("([{}, {}]) . {}", vb.name(i), vb.name(j), m.basis.name(p))
                        });
                    }
                } else {
                    // (e_i e_j) . m_p = e_i . (e_j . m_p)
                    let mut lhs = vec![Rat::zero(); t.dim_m];
                    for (z, c) in t.product[i][j].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (u, v) in t.left_vec(z, &unit_m).iter().enumerate() {
                            lhs[u] = &lhs[u] + &(c * v);
                        }
                    }
                    let rhs = t.left_vec(i, &t.left_vec(j, &unit_m));
                    if lhs != rhs {
                        ok_left = false;
                        witness.get_or_insert_with(|| {
                            format!("({} {}) . {}", vb.name(i), vb.name(j), m.basis.name(p))
                        });
                    }
                    // m_p . (e_i e_j) = (m_p . e_i) . e_j
                    let mut lhs = vec![Rat::zero(); t.dim_m];
                    for (z, c) in t.product[i][j].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (u, v) in t.right_vec(&unit_m, z).iter().enumerate() {
                            lhs[u] = &lhs[u] + &(c * v);
                        }
                    }
                    let rhs = t.right_vec(&t.right_vec(&unit_m, i), j);
                    if lhs != rhs {
                        ok_right = false;
                    }
                    // (e_i . m_p) . e_j = e_i . (m_p . e_j)
                    let lhs = t.right_vec(&t.left_vec(i, &unit_m), j);
                    let rhs = t.left_vec(i, &t.right_vec(&unit_m, j));
                    if lhs != rhs {
                        ok_mixed = false;
                    }
                }
            }
        }
    }
    if lie {
        report.push_with_witness(
            "module-lie-action",
            ok_left,
            "[x,y].a = x.(y.a) - (-1)^(|x||y|) y.(x.a)",
            if ok_left { None } else { witness },
        );
    } else {
        report.push_with_witness(
            "module-left-associativity",
            ok_left,
            "(xy).a = x.(y.a)",
            if ok_left { None } else { witness },
        );
        report.push("module-right-associativity", ok_right, "a.(xy) = (a.x).y");
        report.push(
            "module-bimodule-compatibility",
            ok_mixed,
            "(x.a).y = x.(a.y)",
        );
    }
    Ok(report)
}

/// The double semidirect product `W x W*` for `W = V x M`, carrying the
/// hyperbolic pairing. Keeps the block layout (`V`, `M`, `V*`, `M*`) so
/// cochain lifts can address components.
#[derive(Debug, Clone)]
pub struct DoubleExtension {
    pub structure: QuadraticStructure,
    dim_v: usize,
    dim_m: usize,
}

impl DoubleExtension {
    pub fn dim(&self) -> usize {
        2 * (self.dim_v + self.dim_m)
    }

    pub fn v_index(&self, i: usize) -> usize {
        i
    }

    pub fn m_index(&self, p: usize) -> usize {
        self.dim_v + p
    }

    pub fn vstar_index(&self, i: usize) -> usize {
        self.dim_v + self.dim_m + i
    }

    pub fn mstar_index(&self, p: usize) -> usize {
        2 * self.dim_v + self.dim_m + p
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }
}

/// Builds the double semidirect product of a strict structure by a
/// module. The result is a quadratic structure of the same flavor on a
/// space of dimension `2 (dim V + dim M)`, with dual block degrees
/// negated and the hyperbolic pairing
/// `b((x,a,g,h),(x',a',g',h')) = g(x') + h(a') + g'(x) + h'(a)`.
pub fn double_extension(s: &QuadraticStructure, m: &ModuleData) -> Result<DoubleExtension> {
    let module_report = check_module(s, m)?;
    if !module_report.passed() {
        let failing = module_report
            .checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| c.name.clone())
            .unwrap_or_default();
        return Err(Error::InvalidModule(failing));
    }
    let t = Tables::new(s, m)?;
    let vb = s.basis();
    let mb = m.basis();
    let (nv, nm) = (t.dim_v, t.dim_m);

    let mut names = Vec::with_capacity(2 * (nv + nm));
    let mut degrees = Vec::with_capacity(2 * (nv + nm));
    for i in 0..nv {
        names.push(vb.name(i).to_string());
        degrees.push(vb.degree(i));
    }
    for p in 0..nm {
        names.push(mb.name(p).to_string());
        degrees.push(mb.degree(p));
    }
    for i in 0..nv {
        names.push(format!("{}*", vb.name(i)));
        degrees.push(-vb.degree(i));
    }
    for p in 0..nm {
        names.push(format!("{}*", mb.name(p)));
        degrees.push(-mb.degree(p));
    }
    let basis = GradedBasis::new(names, degrees)?;
    let dim = basis.dim();
    let ext = DoubleExtensionIndices { nv, nm };

    let lie = s.flavor() == Flavor::Lie;
    let mut entries: Vec<((Vec<usize>, usize), Rat)> = Vec::new();
    let mut push = |a: usize, b: usize, out: usize, c: Rat| {
        if !c.is_zero() {
            entries.push(((vec![a, b], out), c));
        }
    };

    for i in 0..nv {
        for j in 0..nv {
            // V . V -> V
            for (z, c) in t.product[i][j].iter().enumerate() {
                push(ext.v(i), ext.v(j), ext.v(z), c.clone());
            }
            // V . V* -> V*  and its mirror
            // (x . g)(z) = g(z x) resp. g([z, x]) for the Lie flavor
            for z in 0..nv {
                let c = t.product[z][i][j].clone();
                push(ext.v(i), ext.vs(j), ext.vs(z), c.clone());
                if lie {
                    push(ext.vs(j), ext.v(i), ext.vs(z), -c);
                } else {
                    // (g . x)(z) = g(x z)
                    let c2 = t.product[i][z][j].clone();
                    push(ext.vs(j), ext.v(i), ext.vs(z), c2);
                }
            }
        }
    }
    for i in 0..nv {
        for p in 0..nm {
            // V . M -> M and M . V -> M
            for (u, c) in t.left[i][p].iter().enumerate() {
                push(ext.v(i), ext.m(p), ext.m(u), c.clone());
                if lie {
                    push(ext.m(p), ext.v(i), ext.m(u), -c.clone());
                }
            }
            if !lie {
                for (u, c) in t.right[p][i].iter().enumerate() {
                    push(ext.m(p), ext.v(i), ext.m(u), c.clone());
                }
            }
            // V . M* -> M* and M* . V -> M*
            // associative: (x . h)(c) = h(c . x), (h . x)(c) = h(x . c)
            // lie: (x . h)(c) = -h(x . c)
            for u in 0..nm {
                if lie {
                    let c = t.left[i][u][p].clone();
                    push(ext.v(i), ext.ms(p), ext.ms(u), -c.clone());
                    push(ext.ms(p), ext.v(i), ext.ms(u), c);
                } else {
                    let c_right = t.right[u][i][p].clone();
                    push(ext.v(i), ext.ms(p), ext.ms(u), c_right);
                    let c_left = t.left[i][u][p].clone();
                    push(ext.ms(p), ext.v(i), ext.ms(u), c_left);
                }
            }
        }
    }
    for p in 0..nm {
        for q_ in 0..nm {
            // M . M* -> V* and M* . M -> V*
            // associative: (a . h)(z) = h(z . a), (h . a)(z) = h(a . z)
            // lie: (a . h)(z) = h(z . a)
            for z in 0..nv {
                let c_left = t.left[z][p][q_].clone();
                push(ext.m(p), ext.ms(q_), ext.vs(z), c_left.clone());
                if lie {
                    push(ext.ms(q_), ext.m(p), ext.vs(z), -c_left);
                } else {
                    let c_right = t.right[p][z][q_].clone();
                    push(ext.ms(q_), ext.m(p), ext.vs(z), c_right);
                }
            }
        }
    }

    let law = VLevelMap::from_entries(basis.clone(), 2, 0, entries)?;

    let mut pairing = QMatrix::zero(dim, dim);
    for i in 0..nv {
        pairing[(ext.v(i), ext.vs(i))] = int(1);
        pairing[(ext.vs(i), ext.v(i))] = int(1);
    }
    for p in 0..nm {
        pairing[(ext.m(p), ext.ms(p))] = int(1);
        pairing[(ext.ms(p), ext.m(p))] = int(1);
    }

    let structure = load_structure(basis, pairing, s.flavor(), vec![law])?;
    Ok(DoubleExtension {
        structure,
        dim_v: nv,
        dim_m: nm,
    })
}

struct DoubleExtensionIndices {
    nv: usize,
    nm: usize,
}

impl DoubleExtensionIndices {
    fn v(&self, i: usize) -> usize {
        i
    }
    fn m(&self, p: usize) -> usize {
        self.nv + p
    }
    fn vs(&self, i: usize) -> usize {
        self.nv + self.nm + i
    }
    fn ms(&self, p: usize) -> usize {
        2 * self.nv + self.nm + p
    }
}

/// Cochain flavors, matching the structure flavor they pair with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CochainFlavor {
    Hochschild,
    Harrison,
    Chevalley,
}

impl CochainFlavor {
    pub fn as_str(self) -> &'static str {
        match self {
            CochainFlavor::Hochschild => "hochschild",
            CochainFlavor::Harrison => "harrison",
            CochainFlavor::Chevalley => "chevalley",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "hochschild" => Ok(CochainFlavor::Hochschild),
            "harrison" => Ok(CochainFlavor::Harrison),
            "chevalley" => Ok(CochainFlavor::Chevalley),
            other => Err(Error::Parse(format!("unknown cohomology flavor `{other}`"))),
        }
    }

    /// The structure flavor this cochain theory belongs to.
    pub fn structure_flavor(self) -> Flavor {
        match self {
            CochainFlavor::Hochschild => Flavor::Associative,
            CochainFlavor::Harrison => Flavor::Commutative,
            CochainFlavor::Chevalley => Flavor::Lie,
        }
    }

    pub fn matches(self, flavor: Flavor) -> bool {
        match self {
            CochainFlavor::Hochschild => {
                matches!(flavor, Flavor::Associative | Flavor::Commutative)
            }
            CochainFlavor::Harrison => matches!(flavor, Flavor::Commutative),
            CochainFlavor::Chevalley => matches!(flavor, Flavor::Lie),
        }
    }
}

impl fmt::Display for CochainFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A `k`-linear map `V^k -> M` in unshifted coordinates: the input of
/// the lift. Sparse over (input tuple, module index). Its bookkeeping
/// degree in the cohomological convention is `2 - k`; the coefficient
/// grading is the module one and can be anything homogeneous.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub arity: usize,
    pub flavor: CochainFlavor,
    pub coeffs: BTreeMap<(Vec<usize>, usize), Rat>,
}

impl Cochain {
    pub fn zero(arity: usize, flavor: CochainFlavor) -> Self {
        Cochain {
            arity,
            flavor,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        arity: usize,
        flavor: CochainFlavor,
        entries: impl IntoIterator<Item = ((Vec<usize>, usize), Rat)>,
    ) -> Result<Self> {
        let mut coeffs: BTreeMap<(Vec<usize>, usize), Rat> = BTreeMap::new();
        for ((key, out), value) in entries {
            if key.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: key.len(),
                });
            }
            if value.is_zero() {
                continue;
            }
            let slot = coeffs.entry((key, out)).or_insert_with(Rat::zero);
            *slot += value;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(Cochain {
            arity,
            flavor,
            coeffs,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, factor: &Rat) -> Cochain {
        let mut out = Cochain::zero(self.arity, self.flavor);
        if factor.is_zero() {
            return out;
        }
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v * factor);
        }
        out
    }

    /// `c` evaluated on a basis tuple, as module coordinates.
    pub fn value(&self, tuple: &[usize], dim_m: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); dim_m];
        for ((key, target), v) in &self.coeffs {
            if key == tuple {
                out[*target] = v.clone();
            }
        }
        out
    }

    /// The permutation action mirrored from the shifted side: reordering
    /// inputs by `sigma` costs `sign(sigma) sign_{|x|}(sigma)`.
    pub fn permute_inputs(&self, basis: &GradedBasis, sigma: &Permutation) -> Result<Cochain> {
        let mut out = Cochain::zero(self.arity, self.flavor);
        for ((key, target), value) in &self.coeffs {
            let t: Vec<usize> = (0..self.arity).map(|i| key[sigma.apply(i)]).collect();
            let unshifted: Vec<i64> = t.iter().map(|&i| basis.degree(i)).collect();
            let sign = sigma.sign() * koszul_sign(&unshifted, sigma)?;
            let entry = out.coeffs.entry((t, *target)).or_insert_with(Rat::zero);
            if sign < 0 {
                *entry -= value;
            } else {
                *entry += value;
            }
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Skew in the graded sense mirrored from symmetry on the shift.
    pub fn is_alternating(&self, basis: &GradedBasis) -> bool {
        if self.arity <= 1 {
            return true;
        }
        (0..self.arity - 1).all(|i| {
            let tau = Permutation::transposition(self.arity, i, i + 1);
            self.permute_inputs(basis, &tau)
                .map(|r| r == *self)
                .unwrap_or(false)
        })
    }

    /// The shuffle-vanishing defect at split `p` of the input slots.
    pub fn shuffle_defect(&self, basis: &GradedBasis, p: usize) -> Result<Cochain> {
        if p == 0 || p >= self.arity {
            return Err(Error::InvalidInput(format!(
                "split {p} out of range 0 < p < {}",
                self.arity
            )));
        }
        let mut out = Cochain::zero(self.arity, self.flavor);
        for sigma in Permutation::shuffles(p, self.arity - p) {
            let term = self.permute_inputs(basis, &sigma)?;
            for (k, v) in term.coeffs {
                let entry = out.coeffs.entry(k).or_insert_with(Rat::zero);
                *entry += v;
            }
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn vanishes_on_shuffles(&self, basis: &GradedBasis) -> bool {
        (1..self.arity).all(|p| {
            self.shuffle_defect(basis, p)
                .map(|d| d.is_zero())
                .unwrap_or(false)
        })
    }

    /// Flavor constraints: alternating for Chevalley, shuffle-vanishing
    /// for Harrison.
    pub fn validate(&self, basis: &GradedBasis) -> Result<()> {
        match self.flavor {
            CochainFlavor::Hochschild => Ok(()),
            CochainFlavor::Harrison => {
                if self.arity >= 2 && !self.vanishes_on_shuffles(basis) {
                    Err(Error::InvalidInput(
                        "harrison cochain does not vanish on shuffle products".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            CochainFlavor::Chevalley => {
                if self.is_alternating(basis) {
                    Ok(())
                } else {
                    Err(Error::InvalidInput(
                        "chevalley cochain is not alternating".into(),
                    ))
                }
            }
        }
    }
}

/// Embeds a cochain as a map on the double extension (`V` block inputs,
/// `M` block output) and shifts it to `V[1]` level.
fn embed_cochain(c: &Cochain, double: &DoubleExtension) -> Result<MultilinearMap> {
    let basis = double.structure.basis().clone();
    // infer the V-level degree from the first entry; enforce homogeneity
    let degree = match c.coeffs.iter().next() {
        None => 0,
        Some(((key, out), _)) => {
            let input: i64 = key.iter().map(|&i| basis.degree(double.v_index(i))).sum();
            basis.degree(double.m_index(*out)) - input
        }
    };
    let entries: Vec<((Vec<usize>, usize), Rat)> = c
        .coeffs
        .iter()
        .map(|((key, out), v)| {
            let tuple: Vec<usize> = key.iter().map(|&i| double.v_index(i)).collect();
            ((tuple, double.m_index(*out)), v.clone())
        })
        .collect();
    let vmap = VLevelMap::from_entries(basis, c.arity, degree, entries)?;
    shift_map(&vmap)
}

/// Lifts a cochain to a quadratic map on the double extension: the bare
/// embedding pairs only against the `M*` slot and its form is not
/// cyclic; the lift closes it up. For the associative and commutative
/// flavors the closure is the cyclicization; for the Lie flavor it is
/// the symmetrization, normalized so the `M` component stays the
/// original cochain.
pub fn lift_cochain(c: &Cochain, double: &DoubleExtension) -> Result<MultilinearMap> {
    if !c.flavor.matches(double.structure.flavor()) {
        return Err(Error::FlavorMismatch(format!(
            "{} cochain against {} structure",
            c.flavor,
            double.structure.flavor()
        )));
    }
    let embedded = embed_cochain(c, double)?;
    let pairing = double.structure.pairing();
    let w = form_of_map(&embedded, pairing)?;
    if double.structure.flavor().is_lie_like() {
        let factorial: i64 = (1..=c.arity as i64).product();
        let sym = w.symmetrize().scale(&rat(1, factorial));
        map_of_form(&sym, pairing)
    } else {
        map_of_form(&w.cyclicize(), pairing)
    }
}

/// The classical coboundary of the flavor: the graded Hochschild
/// formula
///
/// ```text
/// (d c)(x_0, .., x_k) = (-1)^(|c||x_0|) x_0 . c(x_1, .., x_k)
///   + sum_r (-1)^r c(x_0, .., x_{r-1} x_r, .., x_k)
///   + (-1)^(k+1) c(x_0, .., x_{k-1}) . x_k
/// ```
///
/// for the associative and commutative flavors (Harrison is the
/// restriction to shuffle-vanishing cochains), and the Chevalley
/// formula
///
/// ```text
/// (d c)(x_1, .., x_{k+1}) = sum_r (-1)^(r+1) k_r x_r . c(.. no x_r ..)
///   + sum_{r<s} (-1)^(r+s) k_rs c([x_r, x_s], .. no x_r, x_s ..)
/// ```
///
/// with Koszul factors `k_r`, `k_rs` for carrying `x_r` (and `x_s`) to
/// the front, for the Lie flavor.
pub fn classical_differential(
    c: &Cochain,
    s: &QuadraticStructure,
    m: &ModuleData,
) -> Result<Cochain> {
    if !c.flavor.matches(s.flavor()) {
        return Err(Error::FlavorMismatch(format!(
            "{} cochain against {} structure",
            c.flavor,
            s.flavor()
        )));
    }
    let t = Tables::new(s, m)?;
    let vb = s.basis();
    let k = c.arity;
    let out_arity = k + 1;
    let mut out = Cochain::zero(out_arity, c.flavor);
    let add = |key: Vec<usize>, coords: Vec<Rat>, sign: i64, out: &mut Cochain| {
        for (target, v) in coords.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let entry = out
                .coeffs
                .entry((key.clone(), target))
                .or_insert_with(Rat::zero);
            if sign < 0 {
                *entry -= v;
            } else {
                *entry += v;
            }
        }
    };

    // infer |c| parity for the graded factor of the leading term
    let c_degree_parity: i64 = match c.coeffs.iter().next() {
        None => 0,
        Some(((key, target), _)) => {
            let input: i64 = key.iter().map(|&i| vb.degree(i)).sum();
            (m.basis.degree(*target) - input).rem_euclid(2)
        }
    };

    let tuples = all_tuples(vb.dim(), out_arity);
    match c.flavor {
        CochainFlavor::Hochschild | CochainFlavor::Harrison => {
            for tuple in &tuples {
                // x_0 . c(x_1 .. x_k)
                let head = tuple[0];
                let tail = &tuple[1..];
                let inner = c.value(tail, t.dim_m);
                let coords = t.left_vec(head, &inner);
                let lead_sign = if (c_degree_parity * vb.degree(head)).rem_euclid(2) == 1 {
                    -1
                } else {
                    1
                };
                add(tuple.clone(), coords, lead_sign, &mut out);
                // inner multiplications
                for r in 1..=k {
                    let sign = if r % 2 == 1 { -1 } else { 1 };
                    let prod = &t.product[tuple[r - 1]][tuple[r]];
                    for (z, pc) in prod.iter().enumerate() {
                        if pc.is_zero() {
                            continue;
                        }
                        let mut key = Vec::with_capacity(k);
                        key.extend_from_slice(&tuple[..r - 1]);
                        key.push(z);
                        key.extend_from_slice(&tuple[r + 1..]);
                        let coords: Vec<Rat> =
                            c.value(&key, t.dim_m).into_iter().map(|v| v * pc).collect();
                        add(tuple.clone(), coords, sign, &mut out);
                    }
                }
                // c(x_0 .. x_{k-1}) . x_k
                let last = tuple[k];
                let front = &tuple[..k];
                let inner = c.value(front, t.dim_m);
                let coords = t.right_vec(&inner, last);
                let sign = if (k + 1) % 2 == 1 { -1 } else { 1 };
                add(tuple.clone(), coords, sign, &mut out);
            }
        }
        CochainFlavor::Chevalley => {
            for tuple in &tuples {
                // sum_r (-1)^(r+1) x_r . c(.. without x_r ..)
                for r in 0..out_arity {
                    let mut rest = tuple.clone();
                    let xr = rest.remove(r);
                    let inner = c.value(&rest, t.dim_m);
                    let coords = t.left_vec(xr, &inner);
                    let prefix: i64 = tuple[..r].iter().map(|&i| vb.degree(i)).sum();
                    let koszul = (vb.degree(xr) * (c_degree_parity + prefix)).rem_euclid(2);
                    let base = if r % 2 == 0 { 1 } else { -1 };
                    let sign = if koszul == 1 { -base } else { base };
                    add(tuple.clone(), coords, sign, &mut out);
                }
                // sum_{r<s} (-1)^(r+s) c([x_r, x_s], .. without x_r, x_s ..)
                for r in 0..out_arity {
                    for sidx in r + 1..out_arity {
                        let (xr, xs) = (tuple[r], tuple[sidx]);
                        let bracket = &t.product[xr][xs];
                        let prefix_r: i64 = tuple[..r].iter().map(|&i| vb.degree(i)).sum();
                        let prefix_s: i64 = tuple[..sidx]
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != r)
                            .map(|(_, &x)| vb.degree(x))
                            .sum();
                        let koszul =
                            (vb.degree(xr) * prefix_r + vb.degree(xs) * prefix_s).rem_euclid(2);
                        // 1-based (-1)^(r+s) = 0-based (-1)^(r+s) as (r+1)+(s+1) is even shift
                        let base = if (r + sidx) % 2 == 0 { 1 } else { -1 };
                        let sign = if koszul == 1 { -base } else { base };
                        for (z, pc) in bracket.iter().enumerate() {
                            if pc.is_zero() {
                                continue;
                            }
                            let mut key = Vec::with_capacity(k);
                            key.push(z);
                            for (i, &x) in tuple.iter().enumerate() {
                                if i != r && i != sidx {
                                    key.push(x);
                                }
                            }
                            let coords: Vec<Rat> =
                                c.value(&key, t.dim_m).into_iter().map(|v| v * pc).collect();
                            add(tuple.clone(), coords, sign, &mut out);
                        }
                    }
                }
            }
        }
    }
    out.coeffs.retain(|_, v| !v.is_zero());
    Ok(out)
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

/// The bracket-side coboundary on forms over a validated structure:
/// `d_P L = {W, L}` with the structure form, through the quotient
/// bracket for the Lie-like flavors.
pub fn pinczon_differential(
    s: &QuadraticStructure,
    form: &MultilinearForm,
) -> Result<MultilinearForm> {
    if s.taylor().len() != 1 {
        return Err(Error::InvalidInput(
            "the differential needs a single structure coefficient".into(),
        ));
    }
    let equation = structure_equation(s)?;
    if !equation.passed() {
        return Err(Error::InvalidStructure(
            "structure equation does not hold".into(),
        ));
    }
    if s.flavor().is_lie_like() {
        pinczon_bracket_sym(s.structure_form(), form, s.pairing())
    } else {
        pinczon_bracket(s.structure_form(), form, s.pairing())
    }
}

/// Outcome of the chain-map verification for one cochain.
#[derive(Debug, Clone)]
pub struct PhiVerification {
    pub flavor: CochainFlavor,
    pub arity: usize,
    /// The factor claimed between the bracket side and the lifted
    /// classical coboundary: 1, or `2 + k` for the Lie flavor.
    pub expected_factor: Rat,
    pub equal: bool,
    /// When the two sides are proportional but not by the expected
    /// factor, the observed ratio.
    pub measured_factor: Option<Rat>,
    /// First differing coefficient when not proportional at all.
    pub witness: Option<String>,
}

/// Verifies the chain-map identity on the double extension: the
/// bracket-side differential of the lifted cochain against the lift of
/// the classical coboundary, including the `2 + k` factor for the Lie
/// flavor. Both sides are computed exactly and compared coefficient by
/// coefficient.
pub fn verify_phi(c: &Cochain, s: &QuadraticStructure, m: &ModuleData) -> Result<PhiVerification> {
    c.validate(s.basis())?;
    let double = double_extension(s, m)?;
    let lifted = lift_cochain(c, &double)?;
    let pairing = double.structure.pairing();
    let lie = s.flavor().is_lie_like();

    let w_struct = double.structure.structure_form();
    let w_lift = form_of_map(&lifted, pairing)?;
    let bracket_form = if lie {
        pinczon_bracket_sym(w_struct, &w_lift, pairing)?
    } else {
        pinczon_bracket(w_struct, &w_lift, pairing)?
    };
    let lhs = map_of_form(&bracket_form, pairing)?;

    let dc = classical_differential(c, s, m)?;
    let rhs_lift = lift_cochain(&dc, &double)?;
    let expected_factor = if lie { int(2 + c.arity as i64) } else { int(1) };
    let rhs = rhs_lift.scale(&expected_factor);

    let equal = lhs == rhs;
    let mut measured = None;
    let mut witness = None;
    if !equal {
        measured = proportionality(&lhs, &rhs_lift);
        if measured.is_none() {
            witness = lhs
                .iter()
                .chain(rhs.iter())
                .map(|(key, _)| key.clone())
                .find(|key| lhs.coefficient(&key.0, key.1) != rhs.coefficient(&key.0, key.1))
                .map(|(key, out)| {
                    let names: Vec<&str> = key
                        .iter()
                        .map(|&i| double.structure.basis().name(i))
                        .collect();
                    format!(
                        "({}) -> {}: bracket side {}, lifted side {}",
                        names.join(", "),
                        double.structure.basis().name(out),
                        crate::scalar::format_rat(&lhs.coefficient(&key, out)),
                        crate::scalar::format_rat(&rhs.coefficient(&key, out)),
                    )
                });
        }
    }
    Ok(PhiVerification {
        flavor: c.flavor,
        arity: c.arity,
        expected_factor,
        equal,
        measured_factor: measured,
        witness,
    })
}

fn proportionality(lhs: &MultilinearMap, rhs: &MultilinearMap) -> Option<Rat> {
    if rhs.is_zero() || lhs.is_zero() {
        return None;
    }
    let mut lam: Option<Rat> = None;
    for ((key, out), v) in rhs.iter() {
        let l = lhs.coefficient(key, *out);
        let q = l / v.clone();
        match &lam {
            None => lam = Some(q),
            Some(e) if *e == q => {}
            _ => return None,
        }
    }
    for ((key, out), _) in lhs.iter() {
        if rhs.coefficient(key, *out).is_zero() {
            return None;
        }
    }
    lam
}

/// Kernel, image and Betti dimensions at one arity of a classical
/// complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyDims {
    pub kernel: usize,
    pub image: usize,
    pub betti: usize,
}

/// Basis of the flavor subspace of `k`-cochains, as coefficient vectors
/// over the full `(tuple, module index)` coordinate space.
pub(crate) fn cochain_subspace(
    basis: &GradedBasis,
    dim_m: usize,
    flavor: CochainFlavor,
    k: usize,
) -> Result<Vec<Vec<Rat>>> {
    let dim_v = basis.dim();
    let tuples = all_tuples(dim_v, k);
    let coords = tuples.len() * dim_m;
    let index_of = |tuple: &[usize], target: usize| -> usize {
        let mut idx = 0usize;
        for &t in tuple {
            idx = idx * dim_v + t;
        }
        idx * dim_m + target
    };
    let full: Vec<Vec<Rat>> = (0..coords)
        .map(|i| {
            let mut v = vec![Rat::zero(); coords];
            v[i] = int(1);
            v
        })
        .collect();
    if k <= 1 || flavor == CochainFlavor::Hochschild {
        return Ok(full);
    }
    // constraint operators whose joint kernel is the flavor subspace
    let mut constraint_rows: Vec<Vec<Rat>> = Vec::new();
    match flavor {
        CochainFlavor::Chevalley => {
            for i in 0..k - 1 {
                let tau = Permutation::transposition(k, i, i + 1);
                for tuple in &tuples {
                    for target in 0..dim_m {
                        // (A_tau - I) row for the delta cochain at (tuple, target)
                        let mut row = vec![Rat::zero(); coords];
                        let t: Vec<usize> = (0..k).map(|m| tuple[tau.apply(m)]).collect();
                        let unshifted: Vec<i64> = t.iter().map(|&x| basis.degree(x)).collect();
                        let sign = tau.sign() * koszul_sign(&unshifted, &tau)?;
                        row[index_of(&t, target)] += int(sign);
                        row[index_of(tuple, target)] -= int(1);
                        constraint_rows.push(row);
                    }
                }
            }
        }
        CochainFlavor::Harrison => {
            // the defect operators as matrices on coordinates
            for p in 1..k {
                let mut op = vec![vec![Rat::zero(); coords]; coords];
                for sigma in Permutation::shuffles(p, k - p) {
                    for tuple in &tuples {
                        for target in 0..dim_m {
                            let probe = Cochain::from_entries(
                                k,
                                CochainFlavor::Harrison,
                                [((tuple.clone(), target), int(1))],
                            )?;
                            let moved = probe.permute_inputs(basis, &sigma)?;
                            for ((key, out), v) in moved.coeffs {
                                op[index_of(&key, out)][index_of(tuple, target)] += v;
                            }
                        }
                    }
                }
                constraint_rows.extend(op);
            }
        }
        CochainFlavor::Hochschild => unreachable!(),
    }
    let matrix = QMatrix::from_rows(constraint_rows)?;
    let (_, kernel) = rank_and_kernel(&matrix);
    Ok(kernel)
}

/// Betti numbers of the classical complex at arity `k`: exact kernel and
/// image ranks via fraction-free elimination. The `cap` bounds the
/// coordinate-space dimensions involved.
pub fn cohomology_dims(
    s: &QuadraticStructure,
    m: &ModuleData,
    flavor: CochainFlavor,
    k: usize,
    cap: usize,
) -> Result<CohomologyDims> {
    if !flavor.matches(s.flavor()) {
        return Err(Error::FlavorMismatch(format!(
            "{} cohomology of a {} structure",
            flavor,
            s.flavor()
        )));
    }
    let vb = s.basis();
    let dim_v = vb.dim();
    let dim_m = m.dim();
    let dom_coords = dim_v.pow(k as u32) * dim_m;
    let codom_coords = dim_v.pow(k as u32 + 1) * dim_m;
    if dom_coords > cap || codom_coords > cap {
        return Err(Error::SizeCap(format!(
            "cochain space needs {} coefficients, cap is {cap}",
            dom_coords.max(codom_coords)
        )));
    }

    let index_of = |tuple: &[usize], target: usize| -> usize {
        let mut idx = 0usize;
        for &t in tuple {
            idx = idx * dim_v + t;
        }
        idx * dim_m + target
    };

    let apply_d = |vector: &[Rat], arity: usize| -> Result<Vec<Rat>> {
        let tuples = all_tuples(dim_v, arity);
        let mut entries = Vec::new();
        for tuple in &tuples {
            for target in 0..dim_m {
                let v = &vector[index_of(tuple, target)];
                if !v.is_zero() {
                    entries.push(((tuple.clone(), target), v.clone()));
                }
            }
        }
        let c = Cochain::from_entries(arity, flavor, entries)?;
        let dc = classical_differential(&c, s, m)?;
        let mut out = vec![Rat::zero(); dim_v.pow(arity as u32 + 1) * dim_m];
        for ((key, target), v) in dc.coeffs {
            out[index_of(&key, target)] = v;
        }
        Ok(out)
    };

    let domain = cochain_subspace(vb, dim_m, flavor, k)?;
    let dom_dim = domain.len();
    // rank of d_k on the subspace
    let mut dk_cols: Vec<Vec<Rat>> = Vec::with_capacity(dom_dim);
    for basis_vec in &domain {
        dk_cols.push(apply_d(basis_vec, k)?);
    }
    let dk = columns_to_matrix(&dk_cols, codom_coords);
    let rank_dk = rational_rank(&dk);
    let kernel = dom_dim - rank_dk;

    let image = if k == 0 {
        0
    } else {
        let below = cochain_subspace(vb, dim_m, flavor, k - 1)?;
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(below.len());
        for basis_vec in &below {
            cols.push(apply_d(basis_vec, k - 1)?);
        }
        let dk1 = columns_to_matrix(&cols, dom_coords);
        rational_rank(&dk1)
    };
    Ok(CohomologyDims {
        kernel,
        image,
        betti: kernel - image,
    })
}

fn columns_to_matrix(cols: &[Vec<Rat>], rows: usize) -> QMatrix {
    let mut m = QMatrix::zero(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                m[(i, j)] = v.clone();
            }
        }
    }
    m
}

/// Re-export of the exact rank with kernel basis, the engine-side rank
/// primitive.
pub fn rational_rank_with_kernel(matrix: &QMatrix) -> (usize, Vec<Vec<Rat>>) {
    rank_and_kernel(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structure::validate;

    #[test]
    fn trivial_double_extension_is_abelian_hyperbolic() {
        let s = fixtures::abelian_lie(1);
        let m = fixtures::trivial_module(1);
        let double = double_extension(&s, &m).unwrap();
        assert_eq!(double.dim(), 4);
        assert!(double.structure.strict_map().is_zero());
        assert!(validate(&double.structure).unwrap().passed());
    }

    #[test]
    fn sl2_adjoint_double_extension_is_quadratic_lie() {
        let s = fixtures::sl2_killing();
        let m = fixtures::sl2_adjoint_module();
        let double = double_extension(&s, &m).unwrap();
        assert_eq!(double.dim(), 12);
        let report = validate(&double.structure).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn mat2_regular_double_extension_is_quadratic_associative() {
        let s = fixtures::mat2_trace();
        let m = fixtures::mat2_regular_bimodule();
        let double = double_extension(&s, &m).unwrap();
        assert_eq!(double.dim(), 16);
        let report = validate(&double.structure).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn diagonal_double_extension_is_quadratic_commutative() {
        let s = fixtures::diagonal_algebra(2);
        let m = fixtures::diagonal_regular_module(2);
        let double = double_extension(&s, &m).unwrap();
        let report = validate(&double.structure).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn bad_module_rejected() {
        // a "module" violating associativity of the action
        let s = fixtures::mat2_trace();
        let basis = GradedBasis::new(vec!["x".into()], vec![0]).unwrap();
        let mut left = BTreeMap::new();
        // E11 . x = x, E12 . x = x: (E11 E12) . x = E12 . x = x but
        // E11 . (E12 . x) = x as well; break it with E21
        left.insert((0, 0), vec![int(1)]);
        left.insert((1, 0), vec![int(1)]);
        let m = ModuleData::new(basis, left, Some(BTreeMap::new()));
        assert!(matches!(
            double_extension(&s, &m),
            Err(Error::InvalidModule(_))
        ));
    }

    #[test]
    fn lifted_cochain_is_quadratic_with_original_component() {
        let s = fixtures::mat2_trace();
        let m = fixtures::mat2_regular_bimodule();
        let double = double_extension(&s, &m).unwrap();
        // c(E11) = M12, c(E21) = 2 M22
        let c = Cochain::from_entries(
            1,
            CochainFlavor::Hochschild,
            [((vec![0], 1), int(1)), ((vec![2], 3), int(2))],
        )
        .unwrap();
        let lifted = lift_cochain(&c, &double).unwrap();
        let w = form_of_map(&lifted, double.structure.pairing()).unwrap();
        assert!(w.is_cyclic());
        // M component on V inputs equals the shifted cochain
        let basis = double.structure.basis();
        for ((key, out), v) in &c.coeffs {
            let tuple: Vec<usize> = key.iter().map(|&i| double.v_index(i)).collect();
            let shifted: Vec<i64> = tuple.iter().map(|&i| basis.shifted_degree(i)).collect();
            let eta = crate::sign::eta(c.arity as i64, &shifted);
            let expected = if eta < 0 { -v.clone() } else { v.clone() };
            assert_eq!(lifted.coefficient(&tuple, double.m_index(*out)), expected);
        }
    }

    #[test]
    fn lie_lifted_cochain_is_symmetric() {
        let s = fixtures::sl2_killing();
        let m = fixtures::sl2_adjoint_module();
        let double = double_extension(&s, &m).unwrap();
        // skew 2-cochain: c(e, f) = a_h = -c(f, e)
        let c = Cochain::from_entries(
            2,
            CochainFlavor::Chevalley,
            [((vec![0, 1], 2), int(1)), ((vec![1, 0], 2), int(-1))],
        )
        .unwrap();
        assert!(c.is_alternating(s.basis()));
        let lifted = lift_cochain(&c, &double).unwrap();
        assert!(lifted.is_symmetric());
        let w = form_of_map(&lifted, double.structure.pairing()).unwrap();
        assert!(w.is_symmetric());
        let basis = double.structure.basis();
        for ((key, out), v) in &c.coeffs {
            let tuple: Vec<usize> = key.iter().map(|&i| double.v_index(i)).collect();
            let shifted: Vec<i64> = tuple.iter().map(|&i| basis.shifted_degree(i)).collect();
            let eta = crate::sign::eta(c.arity as i64, &shifted);
            let expected = if eta < 0 { -v.clone() } else { v.clone() };
            assert_eq!(lifted.coefficient(&tuple, double.m_index(*out)), expected);
        }
    }

    #[test]
    fn hochschild_differential_on_one_dim_algebra() {
        // q(e,e) = e, M = V regular: d c(e,e) = e.c(e) - c(ee) + c(e).e = c(e)
        let basis = GradedBasis::ungraded(1);
        let q = VLevelMap::from_entries(basis.clone(), 2, 0, [((vec![0, 0], 0), int(1))]).unwrap();
        let s = load_structure(basis, QMatrix::identity(1), Flavor::Associative, vec![q]).unwrap();
        let mut left = BTreeMap::new();
        left.insert((0, 0), vec![int(1)]);
        let m = ModuleData::new(
            GradedBasis::new(vec!["m".into()], vec![0]).unwrap(),
            left.clone(),
            Some({
                let mut right = BTreeMap::new();
                right.insert((0, 0), vec![int(1)]);
                right
            }),
        );
        let c =
            Cochain::from_entries(1, CochainFlavor::Hochschild, [((vec![0], 0), int(1))]).unwrap();
        let dc = classical_differential(&c, &s, &m).unwrap();
        assert_eq!(dc.value(&[0, 0], 1), vec![int(1)]);
    }

    #[test]
    fn chevalley_differential_squares_to_zero_sl2() {
        let s = fixtures::sl2_killing();
        let m = fixtures::sl2_adjoint_module();
        let mut rng = crate::random::rng_from_seed(7);
        for k in 1..=2usize {
            for _ in 0..10 {
                let c = random_cochain_for_tests(&s, &m, CochainFlavor::Chevalley, k, &mut rng);
                let dc = classical_differential(&c, &s, &m).unwrap();
                let ddc = classical_differential(&dc, &s, &m).unwrap();
                assert!(ddc.is_zero(), "d^2 != 0 at arity {k}");
            }
        }
    }

    #[test]
    fn hochschild_differential_squares_to_zero_mat2() {
        let s = fixtures::mat2_trace();
        let m = fixtures::mat2_regular_bimodule();
        let mut rng = crate::random::rng_from_seed(13);
        for k in 1..=2usize {
            for _ in 0..5 {
                let c = random_cochain_for_tests(&s, &m, CochainFlavor::Hochschild, k, &mut rng);
                let dc = classical_differential(&c, &s, &m).unwrap();
                let ddc = classical_differential(&dc, &s, &m).unwrap();
                assert!(ddc.is_zero(), "d^2 != 0 at arity {k}");
            }
        }
    }

    #[test]
    fn phi_is_chain_map_associative_k1() {
        let s = fixtures::mat2_trace();
        let m = fixtures::mat2_regular_bimodule();
        let mut rng = crate::random::rng_from_seed(21);
        for _ in 0..5 {
            let c = random_cochain_for_tests(&s, &m, CochainFlavor::Hochschild, 1, &mut rng);
            let v = verify_phi(&c, &s, &m).unwrap();
            assert!(
                v.equal,
                "measured factor {:?} witness {:?}",
                v.measured_factor, v.witness
            );
        }
    }

    #[test]
    fn phi_is_chain_map_lie_k2_with_factor_four() {
        let s = fixtures::sl2_killing();
        let m = fixtures::sl2_adjoint_module();
        let mut rng = crate::random::rng_from_seed(22);
        for _ in 0..3 {
            let c = random_cochain_for_tests(&s, &m, CochainFlavor::Chevalley, 2, &mut rng);
            let v = verify_phi(&c, &s, &m).unwrap();
            assert_eq!(v.expected_factor, int(4));
            assert!(
                v.equal,
                "measured factor {:?} witness {:?}",
                v.measured_factor, v.witness
            );
        }
    }

    #[test]
    fn abelian_trivial_betti_numbers() {
        let s = fixtures::abelian_lie(1);
        let m = fixtures::trivial_module(1);
        let h0 = cohomology_dims(&s, &m, CochainFlavor::Chevalley, 0, 20000).unwrap();
        let h1 = cohomology_dims(&s, &m, CochainFlavor::Chevalley, 1, 20000).unwrap();
        assert_eq!(h0.betti, 1);
        assert_eq!(h1.betti, 1);
    }

    #[test]
    fn sl2_whitehead_betti_numbers() {
        let s = fixtures::sl2_killing();
        let m = fixtures::sl2_adjoint_module();
        let h1 = cohomology_dims(&s, &m, CochainFlavor::Chevalley, 1, 20000).unwrap();
        let h2 = cohomology_dims(&s, &m, CochainFlavor::Chevalley, 2, 20000).unwrap();
        assert_eq!(h1.betti, 0, "{h1:?}");
        assert_eq!(h2.betti, 0, "{h2:?}");
    }

    #[test]
    fn mat2_hochschild_betti_numbers() {
        let s = fixtures::mat2_trace();
        let m = fixtures::mat2_regular_bimodule();
        let hh0 = cohomology_dims(&s, &m, CochainFlavor::Hochschild, 0, 20000).unwrap();
        let hh1 = cohomology_dims(&s, &m, CochainFlavor::Hochschild, 1, 20000).unwrap();
        assert_eq!(hh0.betti, 1, "{hh0:?}");
        assert_eq!(hh1.betti, 0, "{hh1:?}");
    }

    #[test]
    fn size_cap_is_enforced() {
        let s = fixtures::mat2_trace();
        let m = fixtures::mat2_regular_bimodule();
        assert!(matches!(
            cohomology_dims(&s, &m, CochainFlavor::Hochschild, 3, 100),
            Err(Error::SizeCap(_))
        ));
    }

    /// Random flavor-valid cochain used by the unit tests.
    pub(crate) fn random_cochain_for_tests(
        s: &QuadraticStructure,
        m: &ModuleData,
        flavor: CochainFlavor,
        arity: usize,
        rng: &mut rand_chacha::ChaCha20Rng,
    ) -> Cochain {
        crate::random::random_cochain(s.basis(), m.dim(), flavor, arity, 0.3, rng)
            .expect("cochain generation")
    }
}


#[cfg(test)]
mod restriction_tests {
    use super::*;
    use crate::fixtures;
    use crate::multilinear::unshift_map;
    use crate::random::{random_cochain, rng_from_seed};

    /// The bracket of the structure coderivation with a lifted cochain,
    /// restricted to V-block inputs and the M-block output, is the
    /// shift of the classical coboundary.
    #[test]
    fn bracket_restricts_to_the_classical_coboundary() {
        let mut rng = rng_from_seed(52);
        let cases: [(&QuadraticStructure, &ModuleData, CochainFlavor); 2] = [
            (
                &fixtures::mat2_trace(),
                &fixtures::mat2_regular_bimodule(),
                CochainFlavor::Hochschild,
            ),
            (
                &fixtures::diagonal_algebra(2),
                &fixtures::diagonal_regular_module(2),
                CochainFlavor::Harrison,
            ),
        ];
        for (s, m, flavor) in cases {
            let double = double_extension(s, m).unwrap();
            for k in 1..=2usize {
                for _ in 0..5 {
                    let c = random_cochain(s.basis(), m.dim(), flavor, k, 0.4, &mut rng).unwrap();
                    let lifted = lift_cochain(&c, &double).unwrap();
                    let bracket = double.structure.strict_map().bracket(&lifted).unwrap();
                    // restricted coefficients: V-block inputs, M-block output
                    let mut restricted: Vec<((Vec<usize>, usize), Rat)> = Vec::new();
                    for ((key, out), v) in bracket.iter() {
                        let in_v = key.iter().all(|&i| i < double.dim_v());
                        let m_out =
                            *out >= double.dim_v() && *out < double.dim_v() + double.dim_m();
                        if in_v && m_out {
                            restricted.push(((key.clone(), *out), v.clone()));
                        }
                    }
                    let restricted = MultilinearMap::from_entries(
                        double.structure.basis().clone(),
                        k + 1,
                        bracket.degree(),
                        restricted,
                    )
                    .unwrap();
                    let dc = classical_differential(&c, s, m).unwrap();
                    let embedded = embed_cochain(&dc, &double).unwrap();
                    assert_eq!(restricted, embedded, "flavor {flavor} arity {k}");
                    // and the unshifted restriction recovers d_H c itself
                    let unshifted = unshift_map(&restricted).unwrap();
                    for ((key, out), v) in &unshifted.coeffs {
                        let tuple: Vec<usize> = key.clone();
                        let target = *out - double.dim_v();
                        assert_eq!(dc.value(&tuple, m.dim())[target], v.clone());
                    }
                }
            }
        }
    }

    /// Harrison numbers of the two-point algebra: every module element
    /// is invariant and every derivation-like cochain is a coboundary.
    #[test]
    fn diagonal_harrison_betti() {
        let s = fixtures::diagonal_algebra(2);
        let m = fixtures::diagonal_regular_module(2);
        let h0 = cohomology_dims(&s, &m, CochainFlavor::Harrison, 0, 20_000).unwrap();
        assert_eq!(h0.betti, 2, "{h0:?}");
        let h1 = cohomology_dims(&s, &m, CochainFlavor::Harrison, 1, 20_000).unwrap();
        assert_eq!(h1.betti, 0, "{h1:?}");
    }
}
