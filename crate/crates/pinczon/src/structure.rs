//! Quadratic structures: ingestion of structure constants, validation of
//! the pairing axioms, invariance (B-quadraticity), flavor constraints,
//! and the structure equation, for the strict associative / commutative /
//! Lie flavors and their up-to-homotopy variants.

use std::fmt;
use std::sync::Arc;

use crate::basis::GradedBasis;
use crate::bracket::{form_of_map, pinczon_bracket, pinczon_bracket_sym, BilinearPairing};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::multilinear::{shift_map, unshift_map, MultilinearForm, MultilinearMap, VLevelMap};
use crate::scalar::{format_rat, int, Rat};

/// The kind of algebraic structure carried by the constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Associative,
    Commutative,
    Lie,
    AInfinity,
    CInfinity,
    LInfinity,
}

impl Flavor {
    pub fn is_strict(self) -> bool {
        matches!(
            self,
            Flavor::Associative | Flavor::Commutative | Flavor::Lie
        )
    }

    /// Structures whose coderivations live on the symmetric coalgebra.
    pub fn is_lie_like(self) -> bool {
        matches!(self, Flavor::Lie | Flavor::LInfinity)
    }

    /// Structures constrained to vanish on shuffle products.
    pub fn is_commutative_like(self) -> bool {
        matches!(self, Flavor::Commutative | Flavor::CInfinity)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Associative => "associative",
            Flavor::Commutative => "commutative",
            Flavor::Lie => "lie",
            Flavor::AInfinity => "a-infinity",
            Flavor::CInfinity => "c-infinity",
            Flavor::LInfinity => "l-infinity",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "associative" => Ok(Flavor::Associative),
            "commutative" => Ok(Flavor::Commutative),
            "lie" => Ok(Flavor::Lie),
            "a-infinity" => Ok(Flavor::AInfinity),
            "c-infinity" => Ok(Flavor::CInfinity),
            "l-infinity" => Ok(Flavor::LInfinity),
            other => Err(Error::Parse(format!("unknown kind `{other}`"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named check with its outcome and an optional offending tuple.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

/// Ordered list of check outcomes.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn push_with_witness(
        &mut self,
        name: &str,
        passed: bool,
        detail: impl Into<String>,
        witness: Option<String>,
    ) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
            witness,
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "check {}: {}", c.name, status)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            if let Some(w) = &c.witness {
                write!(f, " witness {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A quadratic (possibly up-to-homotopy) structure: a graded basis, a
/// symmetric nondegenerate degree 0 pairing, and the Taylor coefficients
/// of the structure coderivation, stored on `V[1]` together with their
/// cached forms.
#[derive(Debug, Clone)]
pub struct QuadraticStructure {
    basis: Arc<GradedBasis>,
    pairing: BilinearPairing,
    flavor: Flavor,
    taylor: Vec<MultilinearMap>,
    structure_forms: Vec<MultilinearForm>,
}

impl QuadraticStructure {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn pairing(&self) -> &BilinearPairing {
        &self.pairing
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Taylor coefficients on `V[1]`, ascending arity.
    pub fn taylor(&self) -> &[MultilinearMap] {
        &self.taylor
    }

    /// The binary coefficient of a strict structure.
    pub fn strict_map(&self) -> &MultilinearMap {
        &self.taylor[0]
    }

    /// Cached forms of the Taylor coefficients, aligned with `taylor`.
    pub fn structure_forms(&self) -> &[MultilinearForm] {
        &self.structure_forms
    }

    /// The form of the binary coefficient of a strict structure.
    pub fn structure_form(&self) -> &MultilinearForm {
        &self.structure_forms[0]
    }

    /// The structure constants back on `V` (unshifted).
    pub fn unshifted(&self) -> Result<Vec<VLevelMap>> {
        self.taylor.iter().map(unshift_map).collect()
    }
}

/// Builds a structure from `V`-level constants. For strict flavors the
/// constants are a single binary law of degree 0 on `V`; homotopy
/// flavors supply one list per Taylor arity, each shifting to degree 1.
/// The pairing axioms and coefficient homogeneity are enforced here;
/// deeper checks live in [`validate`].
pub fn load_structure(
    basis: Arc<GradedBasis>,
    pairing_matrix: QMatrix,
    flavor: Flavor,
    constants: Vec<VLevelMap>,
) -> Result<QuadraticStructure> {
    let pairing = BilinearPairing::new(basis.clone(), pairing_matrix)?;
    if flavor.is_strict() {
        if constants.len() != 1 || constants[0].arity != 2 {
            return Err(Error::InvalidInput(format!(
                "{flavor} structure takes exactly one binary law"
            )));
        }
        if constants[0].degree != 0 {
            return Err(Error::Inhomogeneous(format!(
                "strict law must have degree 0 on V, got {}",
                constants[0].degree
            )));
        }
    } else if constants.is_empty() {
        return Err(Error::InvalidInput(
            "homotopy structure needs at least one Taylor coefficient".into(),
        ));
    }
    let mut taylor = Vec::with_capacity(constants.len());
    for q in &constants {
        if q.basis != basis {
            return Err(Error::BasisMismatch);
        }
        let shifted = shift_map(q)?;
        if shifted.degree() != 1 {
            return Err(Error::Inhomogeneous(format!(
                "arity {} coefficient has degree {} on V[1]; the structure coderivation must have degree 1",
                shifted.arity(),
                shifted.degree()
            )));
        }
        taylor.push(shifted);
    }
    taylor.sort_by_key(MultilinearMap::arity);
    if taylor.windows(2).any(|w| w[0].arity() == w[1].arity()) {
        return Err(Error::InvalidInput("duplicate Taylor arity".into()));
    }
    let structure_forms = taylor
        .iter()
        .map(|q| form_of_map(q, &pairing))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadraticStructure {
        basis,
        pairing,
        flavor,
        taylor,
        structure_forms,
    })
}

fn witness_of_form(f: &MultilinearForm) -> Option<String> {
    f.iter().next().map(|(key, v)| {
        let names: Vec<&str> = key.iter().map(|&i| f.basis().name(i)).collect();
        format!("({}) -> {}", names.join(", "), format_rat(v))
    })
}

/// Pairing axioms as a report (they already hold by construction; the
/// report restates them for the command line output).
pub fn check_pairing(s: &QuadraticStructure) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = s.pairing.matrix();
    report.push("pairing-symmetric", m.is_symmetric(), "b(x,y) = b(y,x)");
    let degree_ok = (0..s.basis.dim()).all(|i| {
        (0..s.basis.dim())
            .all(|j| m[(i, j)] == int(0) || s.basis.degree(i) + s.basis.degree(j) == 0)
    });
    report.push(
        "pairing-degree-zero",
        degree_ok,
        "b pairs degrees summing to 0",
    );
    report.push(
        "pairing-nondegenerate",
        m.inverse().is_some(),
        "matrix invertible",
    );
    report
}

/// Invariance of the pairing: `b` is invariant for the law exactly when
/// every structure form is cyclic. Reports a witness tuple on failure.
pub fn check_invariance(s: &QuadraticStructure) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (q, w) in s.taylor.iter().zip(&s.structure_forms) {
        let name = format!("invariance-arity-{}", q.arity());
        match w.cyclic_defect_witness() {
            None => report.push(&name, true, "structure form is cyclic"),
            Some((tuple, a, b)) => {
                let names: Vec<&str> = tuple.iter().map(|&i| s.basis.name(i)).collect();
                report.push_with_witness(
                    &name,
                    false,
                    "structure form is not cyclic",
                    Some(format!(
                        "({}): form {} vs rotated {}",
                        names.join(", "),
                        format_rat(&a),
                        format_rat(&b)
                    )),
                );
            }
        }
    }
    report
}

/// Flavor constraints: commutativity or skewness of the strict law,
/// shuffle-vanishing for the commutative family, total symmetry for the
/// Lie family.
pub fn check_flavor(s: &QuadraticStructure) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    match s.flavor {
        Flavor::Associative | Flavor::AInfinity => {}
        Flavor::Commutative => {
            let q = &s.unshifted()?[0];
            let flags = classify_constants(q);
            report.push(
                "commutative-sign",
                flags.commutative_sign,
                "q(x,y) = (-1)^(|x||y|) q(y,x)",
            );
            let w = &s.structure_forms[0];
            report.push(
                "shuffle-vanishing",
                w.vanishes_on_shuffles(),
                "structure form vanishes on shuffle products",
            );
        }
        Flavor::CInfinity => {
            for w in &s.structure_forms {
                report.push(
                    &format!("shuffle-vanishing-arity-{}", w.arity() - 1),
                    w.vanishes_on_shuffles(),
                    "Taylor form vanishes on shuffle products",
                );
            }
        }
        Flavor::Lie => {
            let q = &s.unshifted()?[0];
            let flags = classify_constants(q);
            report.push(
                "skew-sign",
                flags.skew_sign,
                "q(x,y) = -(-1)^(|x||y|) q(y,x)",
            );
            report.push(
                "structure-form-symmetric",
                s.structure_forms[0].is_symmetric(),
                "form of the shifted bracket is totally symmetric",
            );
        }
        Flavor::LInfinity => {
            for q in &s.taylor {
                report.push(
                    &format!("symmetric-arity-{}", q.arity()),
                    q.is_symmetric(),
                    "Taylor coefficient is totally symmetric",
                );
            }
        }
    }
    Ok(report)
}

/// The structure equation `[Q, Q] = 0`, computed on both sides of the
/// dictionary: the coderivation bracket of the Taylor coefficients
/// (bucketed by arity for homotopy structures) and the self-bracket of
/// the structure forms. The two routes are cross-checked against each
/// other; a failure reports the first offending coefficient.
pub fn structure_equation(s: &QuadraticStructure) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let lie_like = s.flavor.is_lie_like();
    let mut buckets: std::collections::BTreeMap<usize, MultilinearMap> =
        std::collections::BTreeMap::new();
    for qa in &s.taylor {
        for qb in &s.taylor {
            let br = if lie_like {
                qa.bracket_sym(qb)?
            } else {
                qa.bracket(qb)?
            };
            let arity = br.arity();
            let entry = buckets
                .entry(arity)
                .or_insert_with(|| MultilinearMap::zero(s.basis.clone(), arity, 2));
            *entry = entry.add(&br)?;
        }
    }
    for (arity, total) in &buckets {
        let name = format!("structure-equation-arity-{arity}");
        if total.is_zero() {
            report.push(&name, true, "[Q,Q] component vanishes");
        } else {
            let witness = total.iter().next().map(|((key, out), v)| {
                let names: Vec<&str> = key.iter().map(|&i| s.basis.name(i)).collect();
                format!(
                    "({}) -> {} coeff {}",
                    names.join(", "),
                    s.basis.name(*out),
                    format_rat(v)
                )
            });
            report.push_with_witness(&name, false, "[Q,Q] component is nonzero", witness);
        }
    }
    // form route, cross-checked against the image of the map route;
    // it only exists when the structure forms are quadratic, so a
    // failed invariance check surfaces here as a failed check rather
    // than an abort
    let mut form_buckets: std::collections::BTreeMap<usize, MultilinearForm> =
        std::collections::BTreeMap::new();
    let mut form_route_ok = true;
    'outer: for (qa, wa) in s.taylor.iter().zip(&s.structure_forms) {
        for (qb, wb) in s.taylor.iter().zip(&s.structure_forms) {
            let attempt = if lie_like {
                let factor = int((qa.arity() + qb.arity()) as i64);
                pinczon_bracket_sym(wa, wb, &s.pairing).map(|f| f.scale(&(int(1) / factor)))
            } else {
                pinczon_bracket(wa, wb, &s.pairing)
            };
            let br = match attempt {
                Ok(br) => br,
                Err(Error::NotCyclic) | Err(Error::NotSymmetric) => {
                    form_route_ok = false;
                    break 'outer;
                }
                Err(e) => return Err(e),
            };
            let arity = br.arity();
            let entry = form_buckets
                .entry(arity)
                .or_insert_with(|| MultilinearForm::zero(s.basis.clone(), arity, 4));
            *entry = entry.add(&br)?;
        }
    }
    if !form_route_ok {
        report.push(
            "structure-form-equation",
            false,
            "form route not computable: structure form is not quadratic",
        );
        return Ok(report);
    }
    for (arity, total) in &form_buckets {
        let name = format!("structure-form-equation-arity-{arity}");
        if total.is_zero() {
            report.push(&name, true, "{W,W} component vanishes");
        } else {
            report.push_with_witness(
                &name,
                false,
                "{W,W} component is nonzero",
                witness_of_form(total),
            );
        }
    }
    let mut cross_ok = true;
    for (arity, total) in &buckets {
        let image = form_of_map(total, &s.pairing)?;
        let other = form_buckets
            .get(&(arity + 1))
            .cloned()
            .unwrap_or_else(|| MultilinearForm::zero(s.basis.clone(), arity + 1, 4));
        if image != other {
            cross_ok = false;
        }
    }
    report.push(
        "structure-equation-cross-check",
        cross_ok,
        "form route equals the image of the map route",
    );
    Ok(report)
}

/// Symmetry flags of a `V`-level binary law, computed directly from the
/// structure constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyFlags {
    pub associative: bool,
    pub commutative_sign: bool,
    pub skew_sign: bool,
    pub jacobi: bool,
}

/// Direct structure-constant checks on `V`: associativity
/// `q(q(x,y),z) = q(x,q(y,z))`, graded commutativity and skewness, and
/// the graded Jacobi identity
/// `q(x,q(y,z)) = q(q(x,y),z) + (-1)^(|x||y|) q(y,q(x,z))`,
/// all evaluated on every basis triple.
pub fn classify_constants(q: &VLevelMap) -> ClassifyFlags {
    let basis = &q.basis;
    let dim = basis.dim();
    let value = |i: usize, j: usize| -> Vec<Rat> {
        let mut out = vec![int(0); dim];
        for ((key, target), v) in &q.coeffs {
            if key[0] == i && key[1] == j {
                out[*target] = v.clone();
            }
        }
        out
    };
    let apply_vec = |x: &[Rat], j: usize| -> Vec<Rat> {
        let mut out = vec![int(0); dim];
        for (i, c) in x.iter().enumerate() {
            if c == &int(0) {
                continue;
            }
            for (t, v) in value(i, j).into_iter().enumerate() {
                out[t] = &out[t] + &(c * v);
            }
        }
        out
    };
    let apply_left = |i: usize, y: &[Rat]| -> Vec<Rat> {
        let mut out = vec![int(0); dim];
        for (j, c) in y.iter().enumerate() {
            if c == &int(0) {
                continue;
            }
            for (t, v) in value(i, j).into_iter().enumerate() {
                out[t] = &out[t] + &(c * v);
            }
        }
        out
    };

    let mut associative = true;
    let mut jacobi = true;
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let left = apply_vec(&value(x, y), z);
                let right = apply_left(x, &value(y, z));
                if left != right {
                    associative = false;
                }
                let sign = if (basis.degree(x) * basis.degree(y)).rem_euclid(2) == 1 {
                    -1
                } else {
                    1
                };
                let third = apply_left(y, &value(x, z));
                let jac_ok = (0..dim).all(|t| {
                    right[t].clone() - left[t].clone() - int(sign) * third[t].clone() == int(0)
                });
                if !jac_ok {
                    jacobi = false;
                }
            }
        }
    }
    let mut commutative_sign = true;
    let mut skew_sign = true;
    for x in 0..dim {
        for y in 0..dim {
            let fwd = value(x, y);
            let bwd = value(y, x);
            let sign = if (basis.degree(x) * basis.degree(y)).rem_euclid(2) == 1 {
                -1
            } else {
                1
            };
            for t in 0..dim {
                if fwd[t] != int(sign) * bwd[t].clone() {
                    commutative_sign = false;
                }
                if fwd[t] != int(-sign) * bwd[t].clone() {
                    skew_sign = false;
                }
            }
        }
    }
    ClassifyFlags {
        associative,
        commutative_sign,
        skew_sign,
        jacobi,
    }
}

/// Classification of a strict structure from its constants plus the
/// structure equation.
pub fn classify(s: &QuadraticStructure) -> Result<ClassifyFlags> {
    if !s.flavor.is_strict() {
        return Err(Error::FlavorMismatch(
            "classify applies to strict flavors".into(),
        ));
    }
    Ok(classify_constants(&s.unshifted()?[0]))
}

/// Homotopy validation: per-coefficient degree and quadraticity, flavor
/// constraints, and the bracketed structure equation across all Taylor
/// arities.
pub fn validate_homotopy(s: &QuadraticStructure) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    for q in &s.taylor {
        report.push(
            &format!("degree-one-arity-{}", q.arity()),
            q.degree() == 1,
            "Taylor coefficient has degree 1 on V[1]",
        );
    }
    report.merge(check_invariance(s));
    report.merge(check_flavor(s)?);
    report.merge(structure_equation(s)?);
    Ok(report)
}

/// The full validation pipeline used by the `verify` command.
pub fn validate(s: &QuadraticStructure) -> Result<ValidationReport> {
    let mut report = check_pairing(s);
    if s.flavor.is_strict() {
        report.merge(check_invariance(s));
        report.merge(check_flavor(s)?);
        report.merge(structure_equation(s)?);
    } else {
        report.merge(validate_homotopy(s)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn one_dimensional_idempotent_algebra() {
        let basis = GradedBasis::ungraded(1);
        let q = VLevelMap::from_entries(basis.clone(), 2, 0, [((vec![0, 0], 0), int(1))]).unwrap();
        let s = load_structure(basis, QMatrix::identity(1), Flavor::Associative, vec![q]).unwrap();
        let report = validate(&s).unwrap();
        assert!(report.passed(), "{report}");
        let flags = classify(&s).unwrap();
        assert!(flags.associative && flags.commutative_sign);
    }

    #[test]
    fn abelian_lie_algebra_is_valid_with_zero_form() {
        let basis = GradedBasis::ungraded(2);
        let q = VLevelMap::from_entries(basis.clone(), 2, 0, []).unwrap();
        let s = load_structure(basis, QMatrix::identity(2), Flavor::Lie, vec![q]).unwrap();
        assert!(s.structure_form().is_zero());
        assert!(validate(&s).unwrap().passed());
    }

    #[test]
    fn sl2_killing_passes_all_checks() {
        let s = fixtures::sl2_killing();
        let report = validate(&s).unwrap();
        assert!(report.passed(), "{report}");
        let flags = classify(&s).unwrap();
        assert!(flags.skew_sign && flags.jacobi);
        assert!(!flags.associative);
        assert!(s.structure_form().is_symmetric());
    }

    #[test]
    fn sl2_with_identity_pairing_fails_invariance_with_witness() {
        let s = fixtures::sl2_with_pairing(QMatrix::identity(3));
        let report = check_invariance(&s);
        assert!(!report.passed());
        let failing = report.checks.iter().find(|c| !c.passed).unwrap();
        assert!(failing.witness.is_some());
    }

    #[test]
    fn matrix_algebra_trace_form_passes() {
        let s = fixtures::mat2_trace();
        let report = validate(&s).unwrap();
        assert!(report.passed(), "{report}");
        let flags = classify(&s).unwrap();
        assert!(flags.associative);
        assert!(!flags.commutative_sign);
    }

    #[test]
    fn diagonal_algebra_is_commutative_and_shuffle_vanishing() {
        let s = fixtures::diagonal_algebra(3);
        let report = validate(&s).unwrap();
        assert!(report.passed(), "{report}");
        let flags = classify(&s).unwrap();
        assert!(flags.associative && flags.commutative_sign);
        assert!(s.structure_form().vanishes_on_shuffles());
    }

    #[test]
    fn broken_associativity_fails_with_witness() {
        // q(e1,e1) = e2 extended by q(e2,e2) = e1: the hyperbolic pairing
        // stays invariant but (e1 e1) e2 = e1 while e1 (e1 e2) = 0
        let basis = GradedBasis::ungraded(2);
        let q = VLevelMap::from_entries(
            basis.clone(),
            2,
            0,
            [((vec![0, 0], 1), int(1)), ((vec![1, 1], 0), int(1))],
        )
        .unwrap();
        let b = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let s = load_structure(basis, b, Flavor::Associative, vec![q]).unwrap();
        assert!(check_invariance(&s).passed());
        let report = structure_equation(&s).unwrap();
        assert!(!report.passed());
        assert!(report
            .checks
            .iter()
            .any(|c| !c.passed && c.witness.is_some()));
        assert!(!classify(&s).unwrap().associative);
    }

    #[test]
    fn strict_relabelled_as_homotopy_gets_same_verdict() {
        let basis = GradedBasis::ungraded(1);
        let q = VLevelMap::from_entries(basis.clone(), 2, 0, [((vec![0, 0], 0), int(1))]).unwrap();
        let strict = load_structure(
            basis.clone(),
            QMatrix::identity(1),
            Flavor::Associative,
            vec![q.clone()],
        )
        .unwrap();
        let homotopy =
            load_structure(basis, QMatrix::identity(1), Flavor::AInfinity, vec![q]).unwrap();
        assert_eq!(
            structure_equation(&strict).unwrap().passed(),
            validate_homotopy(&homotopy).unwrap().passed()
        );
    }

    #[test]
    fn degenerate_pairing_rejected_at_load() {
        let basis = GradedBasis::ungraded(2);
        let q = VLevelMap::from_entries(basis.clone(), 2, 0, []).unwrap();
        let singular =
            QMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(1), int(1)]]).unwrap();
        assert!(load_structure(basis, singular, Flavor::Lie, vec![q]).is_err());
    }
}

#[cfg(test)]
mod homotopy_tests {
    use super::*;
    use crate::bracket::map_of_form;

    use crate::scalar::rat;

    /// An l-infinity structure with trivial binary part and a single
    /// symmetric quadratic ternary coefficient whose self-insertions
    /// vanish. Ternary degree-1 coefficients need a genuinely mixed
    /// grading.
    #[test]
    fn cubic_l_infinity_structure_validates() {
        // ternary degree-1 coefficients need a mixed grading; on
        // degrees [1, 1, 2, -1, -1, -2] the coefficient built from the
        // symmetric form on (a1, a1, a2, c*) has inputs of shifted
        // degrees {0, -3} and outputs of shifted degrees {1, -2}, so no
        // output can re-enter an input slot and [Q3, Q3] = 0 for degree
        // reasons alone
        let basis = GradedBasis::with_degrees(vec![1, 1, 2, -1, -1, -2]);
        let mut b = QMatrix::zero(6, 6);
        for (i, j) in [(0usize, 3usize), (1, 4), (2, 5)] {
            b[(i, j)] = int(1);
            b[(j, i)] = int(1);
        }
        let pairing = crate::bracket::BilinearPairing::new(basis.clone(), b.clone()).unwrap();
        let w = MultilinearForm::from_entries(basis.clone(), 4, 3, [(vec![0, 0, 1, 5], rat(1, 1))])
            .unwrap()
            .symmetrize();
        assert!(!w.is_zero());
        let q3 = map_of_form(&w, &pairing).unwrap();
        assert_eq!(q3.degree(), 1);
        assert!(q3.is_symmetric());
        assert!(q3.bracket_sym(&q3).unwrap().is_zero());
        let v_level = crate::multilinear::unshift_map(&q3).unwrap();
        let s = load_structure(basis, b, Flavor::LInfinity, vec![v_level]).unwrap();
        let report = validate_homotopy(&s).unwrap();
        assert!(report.passed(), "{report}");
    }

    /// A homotopy structure whose binary part breaks the structure
    /// equation fails with the arity-3 component as witness.
    #[test]
    fn broken_binary_homotopy_fails_with_witness() {
        let basis = GradedBasis::ungraded(2);
        let q = VLevelMap::from_entries(
            basis.clone(),
            2,
            0,
            [((vec![0, 0], 1), int(1)), ((vec![1, 1], 0), int(1))],
        )
        .unwrap();
        let b = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let s = load_structure(basis, b, Flavor::AInfinity, vec![q]).unwrap();
        let report = validate_homotopy(&s).unwrap();
        assert!(!report.passed());
        let failing = report
            .checks
            .iter()
            .find(|c| c.name == "structure-equation-arity-3")
            .unwrap();
        assert!(!failing.passed);
        assert!(failing.witness.is_some());
    }
}
