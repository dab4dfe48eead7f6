//! The bundled corpus and corpus directories.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use smorph_core::residuated::{bl_signature, diagonal_pair, radical_square, tau_h, AlgebraClass};
use smorph_core::tnorm::{
    boolean_algebra, chain_from_table, goedel_chain, grid_labels, lukasiewicz_chain, make_chain,
    nilpotent_minimum_chain, perturbed_lukasiewicz, ChainSpec, ComponentKind,
};
use smorph_core::{diagonal, FiniteAlgebra, Signature};

use crate::format::{parse_algebra_file, render, AlgebraDocument, DeclaredClass, ParseError};

/// One corpus file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    /// File stem; instances are ordered by it.
    pub name: String,
    pub doc: AlgebraDocument,
}

#[derive(Debug)]
pub enum CorpusError {
    Io(PathBuf, io::Error),
    Parse(PathBuf, ParseError),
}

impl std::fmt::Display for CorpusError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CorpusError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CorpusError::Parse(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl std::error::Error for CorpusError {}

pub fn bundled_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn load_file(path: &Path) -> Result<AlgebraDocument, CorpusError> {
    let text = fs::read_to_string(path).map_err(|e| CorpusError::Io(path.to_path_buf(), e))?;
    parse_algebra_file(&text).map_err(|e| CorpusError::Parse(path.to_path_buf(), e))
}

/// Every `*.alg` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<Instance>, CorpusError> {
    let entries = fs::read_dir(dir).map_err(|e| CorpusError::Io(dir.to_path_buf(), e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CorpusError::Io(dir.to_path_buf(), e))?.path();
        if path.extension().is_some_and(|e| e == "alg") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            load_file(&p).map(|doc| Instance { name, doc })
        })
        .collect()
}

pub fn write_dir(dir: &Path, corpus: &[Instance]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for inst in corpus {
        fs::write(dir.join(format!("{}.alg", inst.name)), render(&inst.doc))?;
    }
    Ok(())
}

fn chain_doc(name: &str, alg: FiniteAlgebra, steps: usize, class: AlgebraClass) -> AlgebraDocument {
    AlgebraDocument::new(name, alg)
        .with_names(grid_labels(steps))
        .with_class(class)
}

fn group_signature() -> Signature {
    Signature::new([("mul", 2), ("inv", 1), ("e", 0)]).expect("distinct symbols")
}

/// The symmetric group on three letters; elements are the permutations in
/// lexicographic order and `mul(p, q) = p ∘ q`.
pub fn symmetric_group_3() -> FiniteAlgebra {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
    FiniteAlgebra::from_fn(group_signature(), 6, |op, args| match op {
        0 => {
            let (p, q) = (perms[args[0]], perms[args[1]]);
            index([p[q[0]], p[q[1]], p[q[2]]])
        }
        1 => {
            let p = perms[args[0]];
            let mut inv = [0; 3];
            for i in 0..3 {
                inv[p[i]] = i;
            }
            index(inv)
        }
        _ => 0,
    })
    .expect("valid group")
}

pub fn klein_four() -> FiniteAlgebra {
    FiniteAlgebra::from_fn(group_signature(), 4, |op, args| match op {
        0 => args[0] ^ args[1],
        1 => args[0],
        _ => 0,
    })
    .expect("valid group")
}

/// The lattice with the given order (`le[x][y]` iff `x ≤ y`), meets and
/// joins computed from it.
fn lattice_from_order(le: &[Vec<bool>]) -> FiniteAlgebra {
    let n = le.len();
    let sig = Signature::new([("meet", 2), ("join", 2)]).expect("distinct symbols");
    FiniteAlgebra::from_fn(sig, n, |op, args| {
        let (x, y) = (args[0], args[1]);
        let bounds: Vec<usize> = (0..n)
            .filter(|&z| if op == 0 { le[z][x] && le[z][y] } else { le[x][z] && le[y][z] })
            .collect();
        *bounds
            .iter()
            .find(|&&z| {
                bounds
                    .iter()
                    .all(|&w| if op == 0 { le[w][z] } else { le[z][w] })
            })
            .expect("a lattice order")
    })
    .expect("valid lattice")
}

fn order_from_covers(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (x, row) in le.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(a, b) in covers {
        le[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// The pentagon `0 < 1 < 2 < 4`, `0 < 3 < 4`.
pub fn pentagon() -> FiniteAlgebra {
    lattice_from_order(&order_from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))
}

/// The diamond with atoms 1, 2, 3.
pub fn diamond() -> FiniteAlgebra {
    lattice_from_order(&order_from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))
}

fn pair_names(labels: &[String], elements: impl IntoIterator<Item = usize>) -> Vec<String> {
    let k = labels.len();
    elements
        .into_iter()
        .map(|p| format!("({},{})", labels[p / k], labels[p % k]))
        .collect()
}

/// The corpus shipped in `corpus/`, generated from the library constructors.
pub fn bundled_corpus() -> Vec<Instance> {
    let mut docs: Vec<(String, AlgebraDocument)> = Vec::new();
    let mut add = |doc: AlgebraDocument| docs.push((doc.name.clone(), doc));

    for n in 1..=6 {
        add(chain_doc(&format!("luk-{n}"), lukasiewicz_chain(n), n, AlgebraClass::Mv));
    }
    for n in 2..=6 {
        add(chain_doc(&format!("goedel-{n}"), goedel_chain(n), n, AlgebraClass::Bl));
    }
    let sums: [(&str, Vec<(ComponentKind, usize)>); 3] = [
        ("sum-luk2-goedel1", vec![(ComponentKind::Lukasiewicz, 2), (ComponentKind::Goedel, 1)]),
        ("sum-goedel1-luk2", vec![(ComponentKind::Goedel, 1), (ComponentKind::Lukasiewicz, 2)]),
        ("sum-luk2-luk2", vec![(ComponentKind::Lukasiewicz, 2), (ComponentKind::Lukasiewicz, 2)]),
    ];
    for (name, parts) in sums {
        let spec = ChainSpec::ordinal_sum(parts);
        let steps = spec.steps;
        add(chain_doc(name, make_chain(&spec).expect("valid ordinal sum"), steps, AlgebraClass::Bl));
    }

    let two = boolean_algebra();
    add(AlgebraDocument::new("bool", two.clone()).with_class(AlgebraClass::Mv));
    add(chain_doc("luk-2-tau-identity", lukasiewicz_chain(2), 2, AlgebraClass::Mv).with_tau(vec![0, 1, 2]));
    add(chain_doc("goedel-2-tau-local", goedel_chain(2), 2, AlgebraClass::Bl)
        .with_tau(vec![0, 2, 2])
        .with_note("tau collapses the upper half"));

    let bits: Vec<String> = vec!["0".into(), "1".into()];
    let square = two.product(&two).expect("same signature").0;
    add(AlgebraDocument::new("bool-square", square)
        .with_class(AlgebraClass::Mv)
        .with_names(pair_names(&bits, 0..4)));
    let d2 = diagonal(&two);
    add(AlgebraDocument::new("diagonal-bool", d2.base().clone())
        .with_class(AlgebraClass::Mv)
        .with_names(pair_names(&bits, 0..4))
        .with_tau(d2.tau().to_vec())
        .with_note("tau(x, y) = (x, x)"));
    let pair = diagonal_pair(&two).expect("BL input");
    add(AlgebraDocument::new("diagonal-bool-second", pair.second.base().clone())
        .with_class(AlgebraClass::Mv)
        .with_names(pair_names(&bits, 0..4))
        .with_tau(pair.second.tau().to_vec())
        .with_note("tau(x, y) = (y, y)"));

    let g3 = goedel_chain(2);
    let g3_labels = grid_labels(2);
    let injective = tau_h(&two, &g3, &[0, 2]).expect("valid tau_h");
    add(AlgebraDocument::new("tau-h-bool-goedel2", injective.algebra.base().clone())
        .with_class(AlgebraClass::Bl)
        .with_tau(injective.algebra.tau().to_vec())
        .with_note("tau(a, b) = (a, h(a)) with h injective"));
    let collapsing = tau_h(&g3, &two, &[0, 1, 1]).expect("valid tau_h");
    add(AlgebraDocument::new("tau-h-goedel2-bool", collapsing.algebra.base().clone())
        .with_class(AlgebraClass::Bl)
        .with_tau(collapsing.algebra.tau().to_vec())
        .with_note("tau(a, b) = (a, h(a)) with h not injective"));
    let rad = radical_square(&g3).expect("local input");
    add(AlgebraDocument::new("radical-square-goedel2", rad.algebra.base().clone())
        .with_class(AlgebraClass::Bl)
        .with_names(pair_names(&g3_labels, rad.elements.iter().copied()))
        .with_tau(rad.algebra.tau().to_vec())
        .with_note("generated by the radical squared, tau(x, y) = (x, x)"));

    add(AlgebraDocument::new("nilpotent-minimum-3", nilpotent_minimum_chain(3).expect("valid chain"))
        .with_class(AlgebraClass::Mtl)
        .with_names(grid_labels(3)));
    let perturbed = chain_from_table(&perturbed_lukasiewicz()).expect("adjoint table");
    add(AlgebraDocument::new("perturbed-luk-3", perturbed)
        .with_class(AlgebraClass::NaBl)
        .with_names(grid_labels(3))
        .with_note("non-associative"));

    let generic = |name: &str, alg: FiniteAlgebra| {
        let mut d = AlgebraDocument::new(name, alg);
        d.class = Some(DeclaredClass::Generic);
        d
    };
    add(generic("group-s3", symmetric_group_3()));
    add(generic("group-klein", klein_four()));
    add(generic("lattice-n5", pentagon()));
    add(generic("lattice-m3", diamond()));

    debug_assert!(docs.iter().all(|(_, d)| d.algebra.signature() == &bl_signature()
        || d.class == Some(DeclaredClass::Generic)));
    docs.sort_by(|a, b| a.0.cmp(&b.0));
    docs.into_iter().map(|(name, doc)| Instance { name, doc }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_algebras() {
        let s3 = symmetric_group_3();
        // non-abelian
        assert_ne!(s3.apply2(0, 1, 2), s3.apply2(0, 2, 1));
        let n5 = pentagon();
        assert_eq!(n5.apply2(1, 1, 3), 4);
        assert_eq!(n5.apply2(0, 2, 3), 0);
        let m3 = diamond();
        assert_eq!(m3.apply2(1, 2, 3), 4);
    }

    #[test]
    fn bundled_names_are_unique_and_sorted() {
        let c = bundled_corpus();
        assert!(c.windows(2).all(|w| w[0].name < w[1].name));
    }
}
