//! The JSON file formats of the command line tool: algebras as
//! structure constants, modules as action constants, cochains, and
//! multilinear forms. Rationals travel as strings `p/q` (reduced, `q >
//! 0` on emission), indices are 1-based, and emission is canonical:
//! entries in lexicographic order, so a parsed file re-emits byte for
//! byte.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::GradedBasis;
use crate::cohomology::{Cochain, CochainFlavor, ModuleData};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::multilinear::{MultilinearForm, VLevelMap};
use crate::scalar::{format_rat, parse_rat, Rat};
use crate::structure::{load_structure, Flavor, QuadraticStructure};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StructureEntry {
    /// 1-based input indices.
    pub inputs: Vec<usize>,
    /// 1-based output index.
    pub output: usize,
    pub coeff: String,
}

/// Strict kinds carry a flat entry list; homotopy kinds one list per
/// Taylor arity.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum StructureField {
    Flat(Vec<StructureEntry>),
    PerArity(Vec<Vec<StructureEntry>>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub kind: String,
    pub dim: usize,
    /// Degrees in `V`, unshifted.
    pub degrees: Vec<i64>,
    pub b: Vec<Vec<String>>,
    pub structure: StructureField,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ActionEntry {
    /// 1-based algebra index.
    pub v: usize,
    /// 1-based module index.
    pub m: usize,
    /// 1-based module output index.
    pub out: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModuleFile {
    pub dim: usize,
    pub degrees: Vec<i64>,
    pub left_action: Vec<ActionEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_action: Option<Vec<ActionEntry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CochainEntry {
    pub inputs: Vec<usize>,
    pub out: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CochainFile {
    pub arity: usize,
    pub entries: Vec<CochainEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FormEntry {
    pub inputs: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FormFile {
    pub dim: usize,
    /// Degrees in `V`, unshifted; the form itself lives on `V[1]`.
    pub degrees: Vec<i64>,
    pub arity: usize,
    /// Degree of the form on `V[1]`.
    pub degree: i64,
    pub entries: Vec<FormEntry>,
}

/// Bounds on ingested files: they keep exact-arithmetic work at desk
/// scale and arithmetic on degrees far from overflow.
pub const MAX_DIM: usize = 64;
pub const MAX_ARITY: usize = 8;
pub const MAX_DEGREE: i64 = 10_000;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::Parse(format!(
            "dimension {dim} out of range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

fn check_degrees(degrees: &[i64]) -> Result<()> {
    if let Some(d) = degrees.iter().find(|d| d.abs() > MAX_DEGREE) {
        return Err(Error::Parse(format!(
            "degree {d} out of range +-{MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_ARITY {
        return Err(Error::Parse(format!(
            "arity {arity} out of range 1..={MAX_ARITY}"
        )));
    }
    Ok(())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn emit_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    parse_json(text)
}

pub fn parse_module(text: &str) -> Result<ModuleFile> {
    parse_json(text)
}

pub fn parse_cochain(text: &str) -> Result<CochainFile> {
    parse_json(text)
}

pub fn parse_form(text: &str) -> Result<FormFile> {
    parse_json(text)
}

fn check_index(one_based: usize, dim: usize, what: &str) -> Result<usize> {
    if one_based == 0 || one_based > dim {
        return Err(Error::Parse(format!(
            "{what} index {one_based} out of range 1..={dim}"
        )));
    }
    Ok(one_based - 1)
}

impl AlgebraFile {
    pub fn flavor(&self) -> Result<Flavor> {
        Flavor::parse(&self.kind)
    }

    /// Validates and converts to an engine structure. The basis gets the
    /// synthetic names `e1, .., en`.
    pub fn to_structure(&self) -> Result<QuadraticStructure> {
        check_dim(self.dim)?;
        check_degrees(&self.degrees)?;
        if self.degrees.len() != self.dim {
            return Err(Error::Parse(format!(
                "dim {} but {} degrees",
                self.dim,
                self.degrees.len()
            )));
        }
        let flavor = self.flavor()?;
        let basis = GradedBasis::with_degrees(self.degrees.clone());
        if self.b.len() != self.dim || self.b.iter().any(|row| row.len() != self.dim) {
            return Err(Error::Parse(format!(
                "pairing must be a {0}x{0} matrix",
                self.dim
            )));
        }
        let mut matrix = QMatrix::zero(self.dim, self.dim);
        for (i, row) in self.b.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                matrix[(i, j)] = parse_rat(cell)?;
            }
        }
        let groups: Vec<&Vec<StructureEntry>> = match &self.structure {
            StructureField::Flat(entries) => vec![entries],
            StructureField::PerArity(lists) => lists.iter().collect(),
        };
        let mut constants = Vec::new();
        for entries in groups {
            let arity = match entries.first() {
                Some(e) => e.inputs.len(),
                None => 2,
            };
            check_arity(arity)?;
            let mut parsed: Vec<((Vec<usize>, usize), Rat)> = Vec::new();
            for e in entries {
                if e.inputs.len() != arity {
                    return Err(Error::Parse("mixed arities within one entry list".into()));
                }
                let inputs = e
                    .inputs
                    .iter()
                    .map(|&i| check_index(i, self.dim, "input"))
                    .collect::<Result<Vec<_>>>()?;
                let output = check_index(e.output, self.dim, "output")?;
                parsed.push(((inputs, output), parse_rat(&e.coeff)?));
            }
            // the V-level degree of each coefficient list is determined
            // by homogeneity; strict laws have degree 0
            let degree = if flavor.is_strict() {
                0
            } else {
                match parsed.first() {
                    None => 2 - arity as i64,
                    Some(((inputs, output), _)) => {
                        let input_total: i64 = inputs.iter().map(|&i| basis.degree(i)).sum();
                        basis.degree(*output) - input_total
                    }
                }
            };
            constants.push(VLevelMap::from_entries(
                basis.clone(),
                arity,
                degree,
                parsed,
            )?);
        }
        load_structure(basis, matrix, flavor, constants)
    }

    /// Canonical file for an engine structure.
    pub fn from_structure(s: &QuadraticStructure, name: &str) -> Result<AlgebraFile> {
        let dim = s.basis().dim();
        let b: Vec<Vec<String>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| format_rat(s.pairing().value(i, j)))
                    .collect()
            })
            .collect();
        let unshifted = s.unshifted()?;
        let entry_list = |q: &VLevelMap| -> Vec<StructureEntry> {
            q.coeffs
                .iter()
                .map(|((inputs, output), coeff)| StructureEntry {
                    inputs: inputs.iter().map(|&i| i + 1).collect(),
                    output: output + 1,
                    coeff: format_rat(coeff),
                })
                .collect()
        };
        let structure = if s.flavor().is_strict() {
            StructureField::Flat(entry_list(&unshifted[0]))
        } else {
            StructureField::PerArity(unshifted.iter().map(entry_list).collect())
        };
        Ok(AlgebraFile {
            name: name.to_string(),
            kind: s.flavor().as_str().to_string(),
            dim,
            degrees: s.basis().degrees().to_vec(),
            b,
            structure,
        })
    }

    pub fn emit(&self) -> String {
        let mut canonical = self.clone();
        match &mut canonical.structure {
            StructureField::Flat(entries) => {
                entries.sort_by(|a, b| (&a.inputs, a.output).cmp(&(&b.inputs, b.output)))
            }
            StructureField::PerArity(lists) => {
                for entries in lists.iter_mut() {
                    entries.sort_by(|a, b| (&a.inputs, a.output).cmp(&(&b.inputs, b.output)));
                }
                lists.sort_by_key(|entries| entries.first().map_or(0, |e| e.inputs.len()));
            }
        }
        for row in &mut canonical.b {
            for cell in row.iter_mut() {
                if let Ok(r) = parse_rat(cell) {
                    *cell = format_rat(&r);
                }
            }
        }
        emit_json(&canonical)
    }
}

impl ModuleFile {
    pub fn to_module(&self, algebra_dim: usize) -> Result<ModuleData> {
        check_dim(self.dim)?;
        check_degrees(&self.degrees)?;
        if self.degrees.len() != self.dim {
            return Err(Error::Parse(format!(
                "dim {} but {} degrees",
                self.dim,
                self.degrees.len()
            )));
        }
        let basis = GradedBasis::new(
            (1..=self.dim).map(|i| format!("m{i}")).collect(),
            self.degrees.clone(),
        )?;
        let read = |entries: &[ActionEntry]| -> Result<BTreeMap<(usize, usize), Vec<Rat>>> {
            let mut table: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
            for e in entries {
                let v = check_index(e.v, algebra_dim, "algebra")?;
                let m = check_index(e.m, self.dim, "module")?;
                let out = check_index(e.out, self.dim, "module output")?;
                let coeff = parse_rat(&e.coeff)?;
                let slot = table
                    .entry((v, m))
                    .or_insert_with(|| vec![Rat::from_integer(0.into()); self.dim]);
                slot[out] = coeff;
            }
            Ok(table)
        };
        let left = read(&self.left_action)?;
        let right = match &self.right_action {
            Some(entries) => Some({
                let mut table: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
                for e in entries {
                    // for the right action `v` and `m` swap roles: m . v
                    let m = check_index(e.m, self.dim, "module")?;
                    let v = check_index(e.v, algebra_dim, "algebra")?;
                    let out = check_index(e.out, self.dim, "module output")?;
                    let coeff = parse_rat(&e.coeff)?;
                    let slot = table
                        .entry((m, v))
                        .or_insert_with(|| vec![Rat::from_integer(0.into()); self.dim]);
                    slot[out] = coeff;
                }
                table
            }),
            None => None,
        };
        Ok(ModuleData::new(basis, left, right))
    }

    pub fn emit(&self) -> String {
        let mut canonical = self.clone();
        let sort = |entries: &mut Vec<ActionEntry>| {
            entries.sort_by(|a, b| (a.v, a.m, a.out).cmp(&(b.v, b.m, b.out)));
        };
        sort(&mut canonical.left_action);
        if let Some(right) = &mut canonical.right_action {
            sort(right);
        }
        emit_json(&canonical)
    }
}

impl CochainFile {
    pub fn to_cochain(
        &self,
        flavor: CochainFlavor,
        algebra_dim: usize,
        module_dim: usize,
    ) -> Result<Cochain> {
        check_arity(self.arity)?;
        let mut entries = Vec::new();
        for e in &self.entries {
            if e.inputs.len() != self.arity {
                return Err(Error::Parse("entry arity differs from header".into()));
            }
            let inputs = e
                .inputs
                .iter()
                .map(|&i| check_index(i, algebra_dim, "input"))
                .collect::<Result<Vec<_>>>()?;
            let out = check_index(e.out, module_dim, "module output")?;
            entries.push(((inputs, out), parse_rat(&e.coeff)?));
        }
        Cochain::from_entries(self.arity, flavor, entries)
    }

    pub fn from_cochain(c: &Cochain) -> CochainFile {
        CochainFile {
            arity: c.arity,
            entries: c
                .coeffs
                .iter()
                .map(|((inputs, out), coeff)| CochainEntry {
                    inputs: inputs.iter().map(|&i| i + 1).collect(),
                    out: out + 1,
                    coeff: format_rat(coeff),
                })
                .collect(),
        }
    }

    pub fn emit(&self) -> String {
        let mut canonical = self.clone();
        canonical
            .entries
            .sort_by(|a, b| (&a.inputs, a.out).cmp(&(&b.inputs, b.out)));
        emit_json(&canonical)
    }
}

impl FormFile {
    pub fn to_form(&self, basis: &Arc<GradedBasis>) -> Result<MultilinearForm> {
        check_arity(self.arity.max(1))?;
        if self.degree.abs() > MAX_DEGREE * MAX_ARITY as i64 {
            return Err(Error::Parse("form degree out of range".into()));
        }
        if self.dim != basis.dim() || self.degrees != basis.degrees() {
            return Err(Error::Parse(
                "form file does not match the algebra's basis".into(),
            ));
        }
        let mut entries = Vec::new();
        for e in &self.entries {
            if e.inputs.len() != self.arity {
                return Err(Error::Parse("entry arity differs from header".into()));
            }
            let inputs = e
                .inputs
                .iter()
                .map(|&i| check_index(i, self.dim, "input"))
                .collect::<Result<Vec<_>>>()?;
            entries.push((inputs, parse_rat(&e.coeff)?));
        }
        MultilinearForm::from_entries(basis.clone(), self.arity, self.degree, entries)
    }

    pub fn from_form(form: &MultilinearForm) -> FormFile {
        FormFile {
            dim: form.basis().dim(),
            degrees: form.basis().degrees().to_vec(),
            arity: form.arity(),
            degree: form.degree(),
            entries: form
                .iter()
                .map(|(inputs, coeff)| FormEntry {
                    inputs: inputs.iter().map(|&i| i + 1).collect(),
                    coeff: format_rat(coeff),
                })
                .collect(),
        }
    }

    pub fn emit(&self) -> String {
        let mut canonical = self.clone();
        canonical.entries.sort_by(|a, b| a.inputs.cmp(&b.inputs));
        emit_json(&canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_roundtrip_is_byte_identical() {
        let s = fixtures::sl2_killing();
        let file = AlgebraFile::from_structure(&s, "sl2-killing").unwrap();
        let text = file.emit();
        let reparsed = parse_algebra(&text).unwrap();
        assert_eq!(reparsed.emit(), text);
        let s2 = reparsed.to_structure().unwrap();
        // names are synthesized on ingestion; compare the data
        let entries = |m: &crate::multilinear::MultilinearMap| -> Vec<((Vec<usize>, usize), Rat)> {
            m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
        };
        assert_eq!(entries(s2.strict_map()), entries(s.strict_map()));
        assert_eq!(s2.pairing().matrix(), s.pairing().matrix());
    }

    #[test]
    fn malformed_inputs_error_cleanly() {
        assert!(parse_algebra("{").is_err());
        assert!(parse_algebra("null").is_err());
        let bad_index = r#"{
            "name": "x", "kind": "lie", "dim": 1, "degrees": [0],
            "b": [["1"]],
            "structure": [{"inputs": [1, 2], "output": 1, "coeff": "1"}]
        }"#;
        let file = parse_algebra(bad_index).unwrap();
        assert!(file.to_structure().is_err());
        let bad_rat = r#"{
            "name": "x", "kind": "lie", "dim": 1, "degrees": [0],
            "b": [["1/0"]],
            "structure": []
        }"#;
        let file = parse_algebra(bad_rat).unwrap();
        assert!(file.to_structure().is_err());
    }

    #[test]
    fn form_roundtrip() {
        let s = fixtures::sl2_killing();
        let file = FormFile::from_form(s.structure_form());
        let text = file.emit();
        let reparsed = parse_form(&text).unwrap();
        assert_eq!(reparsed.emit(), text);
        let form = reparsed.to_form(s.basis()).unwrap();
        assert_eq!(&form, s.structure_form());
    }

    #[test]
    fn module_rejects_bad_dimensions() {
        let text = r#"{"dim": 2, "degrees": [0], "left_action": []}"#;
        let file = parse_module(text).unwrap();
        assert!(file.to_module(3).is_err());
    }
}
