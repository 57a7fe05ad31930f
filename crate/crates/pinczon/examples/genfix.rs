//! Regenerates the canonical JSON fixtures used by the command line
//! tests and the fuzz corpus. Run from the workspace root:
//! `cargo run -p pinczon --example genfix`.

use std::fs;

use pinczon::cohomology::ModuleData;
use pinczon::fixtures::*;
use pinczon::format::{ActionEntry, AlgebraFile, ModuleFile};
use pinczon::scalar::{format_rat, int};

fn module_file(m: &ModuleData, algebra_dim: usize, with_right: bool) -> ModuleFile {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for v in 0..algebra_dim {
        for p in 0..m.dim() {
            for (out, c) in m.left_action(v, p).into_iter().enumerate() {
                if c != int(0) {
                    left.push(ActionEntry {
                        v: v + 1,
                        m: p + 1,
                        out: out + 1,
                        coeff: format_rat(&c),
                    });
                }
            }
            if with_right {
                for (out, c) in m.right_action(p, v).into_iter().enumerate() {
                    if c != int(0) {
                        right.push(ActionEntry {
                            v: v + 1,
                            m: p + 1,
                            out: out + 1,
                            coeff: format_rat(&c),
                        });
                    }
                }
            }
        }
    }
    ModuleFile {
        dim: m.dim(),
        degrees: m.basis().degrees().to_vec(),
        left_action: left,
        right_action: if with_right { Some(right) } else { None },
    }
}

fn main() {
    let dir = std::path::Path::new("crates/pinczon-cli/tests/data");
    fs::create_dir_all(dir).unwrap();
    let save = |name: &str, text: String| {
        fs::write(dir.join(name), text).unwrap();
        println!("wrote {name}");
    };

    save(
        "sl2-killing.json",
        AlgebraFile::from_structure(&sl2_killing(), "sl2-killing")
            .unwrap()
            .emit(),
    );
    save(
        "sl2-identity-b.json",
        AlgebraFile::from_structure(
            &sl2_with_pairing(pinczon::linalg::QMatrix::identity(3)),
            "sl2-identity-b",
        )
        .unwrap()
        .emit(),
    );
    save(
        "mat2-trace.json",
        AlgebraFile::from_structure(&mat2_trace(), "mat2-trace")
            .unwrap()
            .emit(),
    );
    save(
        "diag2.json",
        AlgebraFile::from_structure(&diagonal_algebra(2), "diag2")
            .unwrap()
            .emit(),
    );
    save(
        "abelian1.json",
        AlgebraFile::from_structure(&abelian_lie(1), "abelian1")
            .unwrap()
            .emit(),
    );
    save(
        "sl2-adjoint-module.json",
        module_file(&sl2_adjoint_module(), 3, false).emit(),
    );
    save(
        "mat2-regular-module.json",
        module_file(&mat2_regular_bimodule(), 4, true).emit(),
    );
    save(
        "diag2-regular-module.json",
        module_file(&diagonal_regular_module(2), 2, false).emit(),
    );
    save(
        "abelian1-trivial-module.json",
        module_file(&trivial_module(1), 1, false).emit(),
    );
    save("malformed.json", "{ this is not json".to_string());
}
