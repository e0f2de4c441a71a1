//! Named groups with generator recipes, defining relations and the data the
//! commuting-graph classification predicts for them.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::genus::GenusClass;
use crate::graph::ShapeDescriptor;
use crate::graph::ShapeExpr;
use crate::group::word::parse_relations;
use crate::group::{CentralizerCensus, FiniteGroup, GroupError, Permutation, DEFAULT_CAP};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown group name `{0}`")]
    UnknownGroupName(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Planar,
    Toroidal,
    DoubleToroidal,
    TripleToroidal,
}

impl Family {
    pub fn genus_class(self) -> GenusClass {
        match self {
            Family::Planar => GenusClass::Planar,
            Family::Toroidal => GenusClass::Toroidal,
            Family::DoubleToroidal => GenusClass::DoubleToroidal,
            Family::TripleToroidal => GenusClass::TripleToroidal,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Recipe {
    Permutations(Vec<Permutation>),
    /// Invertible 2×2 matrices over Z/pZ, entries row-major.
    Matrices { p: u32, gens: Vec<[u32; 4]> },
    DirectProduct(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            Recipe::Permutations(gens) => FiniteGroup::from_permutation_generators(gens, cap),
            Recipe::Matrices { p, gens } => FiniteGroup::from_matrix_generators(*p, gens, cap),
            Recipe::DirectProduct(a, b) => {
                let (a, b) = (a.build(cap)?, b.build(cap)?);
                if a.order() * b.order() > cap {
                    return Err(GroupError::ClosureExceedsCap { cap });
                }
                Ok(a.direct_product(&b))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub order: usize,
    pub family: Family,
    /// One letter per generator, in recipe order.
    pub generator_names: &'static str,
    pub relations: &'static str,
    pub expected_shape: Option<&'static str>,
    pub census: Option<&'static [(usize, usize)]>,
    pub recipe: Recipe,
}

impl CatalogEntry {
    pub fn expected_genus_class(&self) -> GenusClass {
        self.family.genus_class()
    }

    pub fn expected_descriptor(&self) -> Option<ShapeDescriptor> {
        self.expected_shape.map(|s| {
            ShapeExpr::parse(s).expect("catalog shapes are well formed").descriptor()
        })
    }

    pub fn expected_census(&self) -> Option<CentralizerCensus> {
        self.census.map(CentralizerCensus::from_pairs)
    }
}

/// Catalog listing row.
#[derive(Clone, Debug, Serialize)]
pub struct ListingRow {
    pub name: &'static str,
    pub order: usize,
    pub genus_class: String,
    pub expected_shape: Option<String>,
}

fn cyc(degree: usize, text: &str) -> Permutation {
    Permutation::parse_cycles(degree, text).expect("catalog permutation")
}

fn img(images: &[u32]) -> Permutation {
    Permutation::new(images.to_vec()).expect("catalog permutation")
}

fn cyclic(n: usize) -> Recipe {
    Recipe::Permutations(vec![img(&(1..n as u32).chain([0]).collect::<Vec<_>>())])
}

/// Symmetries of a `k`-gon: rotation `r` then reflection `s`.
fn dihedral(k: usize) -> Recipe {
    let r: Vec<u32> = (0..k as u32).map(|i| (i + 1) % k as u32).collect();
    let s: Vec<u32> = (0..k as u32).map(|i| (k as u32 - i) % k as u32).collect();
    Recipe::Permutations(vec![img(&r), img(&s)])
}

fn perms(degree: usize, gens: &[&str]) -> Recipe {
    Recipe::Permutations(gens.iter().map(|g| cyc(degree, g)).collect())
}

fn mats(p: u32, gens: &[[u32; 4]]) -> Recipe {
    Recipe::Matrices { p, gens: gens.to_vec() }
}

fn product(a: Recipe, b: Recipe) -> Recipe {
    Recipe::DirectProduct(Box::new(a), Box::new(b))
}

const DIHEDRAL_REL: [&str; 8] = [
    "r^3 = s^2 = (rs)^2 = 1",
    "r^4 = s^2 = (rs)^2 = 1",
    "r^5 = s^2 = (rs)^2 = 1",
    "r^6 = s^2 = (rs)^2 = 1",
    "r^7 = s^2 = (rs)^2 = 1",
    "r^8 = s^2 = (rs)^2 = 1",
    "r^9 = s^2 = (rs)^2 = 1",
    "r^10 = s^2 = (rs)^2 = 1",
];

#[allow(clippy::too_many_arguments)]
fn entry(
    name: &'static str,
    aliases: &'static [&'static str],
    order: usize,
    family: Family,
    generator_names: &'static str,
    relations: &'static str,
    expected_shape: Option<&'static str>,
    census: Option<&'static [(usize, usize)]>,
    recipe: Recipe,
) -> CatalogEntry {
    CatalogEntry {
        name,
        aliases,
        order,
        family,
        generator_names,
        relations,
        expected_shape,
        census,
        recipe,
    }
}

fn dihedral_entry(
    order: usize,
    name: &'static str,
    aliases: &'static [&'static str],
    family: Family,
    shape: Option<&'static str>,
    census: Option<&'static [(usize, usize)]>,
) -> CatalogEntry {
    let k = order / 2;
    entry(name, aliases, order, family, "rs", DIHEDRAL_REL[k - 3], shape, census, dihedral(k))
}

fn q8() -> Recipe {
    mats(5, &[[2, 0, 0, 3], [0, 1, 4, 0]])
}

fn entries() -> Vec<CatalogEntry> {
    use Family::*;
    let a4 = || perms(4, &["(0 1)(2 3)", "(0 1 2)"]);
    vec![
        dihedral_entry(6, "D6", &["S3", "GL(2,2)"], Planar, Some("K2 + 3K1"), None),
        dihedral_entry(8, "D8", &[], Planar, Some("3K2"), None),
        entry(
            "Q8",
            &[],
            8,
            Planar,
            "ij",
            "i^4 = 1, i^2 = j^2, i^j = i^-1",
            Some("3K2"),
            None,
            q8(),
        ),
        dihedral_entry(10, "D10", &[], Planar, Some("K4 + 5K1"), None),
        dihedral_entry(12, "D12", &[], Planar, Some("K4 + 3K2"), None),
        entry(
            "Q12",
            &["Dic3", "Z3:Z4"],
            12,
            Planar,
            "ab",
            "a^6 = 1, b^2 = a^3, a^b = a^-1",
            Some("K4 + 3K2"),
            None,
            mats(7, &[[3, 0, 0, 5], [0, 1, 6, 0]]),
        ),
        entry(
            "A4",
            &[],
            12,
            Planar,
            "ab",
            "a^2 = b^3 = (ab)^3 = 1",
            Some("K3 + 4K2"),
            None,
            a4(),
        ),
        entry(
            "Sz(2)",
            &["Z5:Z4", "F20"],
            20,
            Planar,
            "xy",
            "x^5 = y^4 = 1, x^y = x^2",
            Some("K4 + 5K3"),
            None,
            perms(5, &["(0 1 2 3 4)", "(1 2 4 3)"]),
        ),
        entry(
            "SL(2,3)",
            &[],
            24,
            Planar,
            "ab",
            "a^3 = b^3 = (ab)^4 = 1",
            Some("4K4 + 3K2"),
            None,
            mats(3, &[[1, 1, 0, 1], [1, 0, 1, 1]]),
        ),
        // No shape: the computed commuting graph differs from the one quoted
        // for this order, see the README.
        entry(
            "S4",
            &[],
            24,
            Planar,
            "ab",
            "a^4 = b^2 = (ab)^3 = 1",
            None,
            None,
            perms(4, &["(0 1 2 3)", "(0 1)"]),
        ),
        entry(
            "A5",
            &[],
            60,
            Planar,
            "ab",
            "a^2 = b^3 = (ab)^5 = 1",
            Some("6K4 + 5K3 + 10K2"),
            None,
            perms(5, &["(0 1)(2 3)", "(0 2 4)"]),
        ),
        dihedral_entry(14, "D14", &[], Toroidal, Some("K6 + 7K1"), None),
        dihedral_entry(16, "D16", &[], Toroidal, Some("K6 + 4K2"), None),
        entry(
            "Q16",
            &["Dic4"],
            16,
            Toroidal,
            "ab",
            "a^8 = 1, b^2 = a^4, a^b = a^-1",
            Some("K6 + 4K2"),
            None,
            mats(17, &[[2, 0, 0, 9], [0, 1, 16, 0]]),
        ),
        entry(
            "QD16",
            &["SD16"],
            16,
            Toroidal,
            "ab",
            "a^8 = b^2 = 1, a^b = a^3",
            Some("K6 + 4K2"),
            None,
            perms(8, &["(0 1 2 3 4 5 6 7)", "(1 3)(2 6)(5 7)"]),
        ),
        entry(
            "D6xZ3",
            &["S3xZ3"],
            18,
            Toroidal,
            "rsc",
            "r^3 = s^2 = (rs)^2 = c^3 = 1, [r,c] = [s,c] = 1",
            Some("K6 + 3K3"),
            None,
            perms(6, &["(0 1 2)", "(1 2)", "(3 4 5)"]),
        ),
        entry(
            "Z7:Z3",
            &["F21"],
            21,
            Toroidal,
            "xy",
            "x^7 = y^3 = 1, x^y = x^2",
            Some("K6 + 7K2"),
            None,
            perms(7, &["(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"]),
        ),
        entry(
            "A4xZ2",
            &[],
            24,
            Toroidal,
            "abc",
            "a^2 = b^3 = (ab)^3 = c^2 = 1, [a,c] = [b,c] = 1",
            Some("K6 + 4K4"),
            None,
            product(a4(), cyclic(2)),
        ),
        dihedral_entry(
            18,
            "D18",
            &[],
            DoubleToroidal,
            Some("K8 + 9K1"),
            Some(&[(9, 1), (2, 9)]),
        ),
        entry(
            "(Z3xZ3):Z2",
            &[],
            18,
            DoubleToroidal,
            "xyz",
            "x^3 = y^3 = z^2 = [x,y] = 1, x^z = x^-1, y^z = y^-1",
            Some("K8 + 9K1"),
            Some(&[(9, 1), (2, 9)]),
            perms(6, &["(0 1 2)", "(3 4 5)", "(1 2)(4 5)"]),
        ),
        dihedral_entry(
            20,
            "D20",
            &[],
            DoubleToroidal,
            Some("K8 + 5K2"),
            Some(&[(10, 1), (4, 5)]),
        ),
        entry(
            "Q20",
            &["Dic5"],
            20,
            DoubleToroidal,
            "ab",
            "a^10 = 1, b^2 = a^5, a^b = a^-1",
            Some("K8 + 5K2"),
            Some(&[(10, 1), (4, 5)]),
            mats(11, &[[2, 0, 0, 6], [0, 1, 10, 0]]),
        ),
        entry(
            "S3xZ2xZ2",
            &["D6xZ2xZ2"],
            24,
            DoubleToroidal,
            "rsuv",
            "r^3 = s^2 = (rs)^2 = u^2 = v^2 = 1, \
             [r,u] = [s,u] = [r,v] = [s,v] = [u,v] = 1",
            Some("K8 + 3K4"),
            Some(&[(12, 1), (8, 3)]),
            perms(7, &["(0 1 2)", "(1 2)", "(3 4)", "(5 6)"]),
        ),
        entry(
            "S3xZ4",
            &["D6xZ4"],
            24,
            DoubleToroidal,
            "rsc",
            "r^3 = s^2 = (rs)^2 = c^4 = 1, [r,c] = [s,c] = 1",
            Some("K8 + 3K4"),
            Some(&[(12, 1), (8, 3)]),
            perms(7, &["(0 1 2)", "(1 2)", "(3 4 5 6)"]),
        ),
        entry(
            "Z3:Z8",
            &[],
            24,
            DoubleToroidal,
            "xy",
            "x^8 = y^3 = 1, y^x = y^-1",
            Some("K8 + 3K4"),
            Some(&[(12, 1), (8, 3)]),
            perms(11, &["(1 2)(3 4 5 6 7 8 9 10)", "(0 1 2)"]),
        ),
        entry(
            "(Z3:Z4)xZ2",
            &["Q12xZ2", "Dic3xZ2"],
            24,
            DoubleToroidal,
            "xyz",
            "x^4 = y^3 = z^2 = 1, xyx^-1 = y^-1, xz = zx, yz = zy",
            Some("K8 + 3K4"),
            Some(&[(12, 1), (8, 3)]),
            perms(9, &["(1 2)(3 4 5 6)", "(0 1 2)", "(7 8)"]),
        ),
        entry(
            "(Z3xZ3):Z4",
            &[],
            36,
            DoubleToroidal,
            "xy",
            "x^4 = y^3 = (yx^2)^2 = [x^-1yx, y] = 1",
            Some("K8 + 9K3"),
            Some(&[(9, 1), (4, 9)]),
            Recipe::Permutations(vec![
                img(&[0, 3, 6, 2, 5, 8, 1, 4, 7]),
                img(&[3, 4, 5, 6, 7, 8, 0, 1, 2]),
            ]),
        ),
        entry(
            "(Z3xZ3):Q8",
            &[],
            72,
            DoubleToroidal,
            "xyz",
            "x^4 = y^4 = z^3 = 1, y^x = y^-1, z^(y^2) = z^-1, z^(x^2) = z^-1, \
             x^-1zx^-1 = (zy)^2",
            Some("K8 + 9F3"),
            None,
            Recipe::Permutations(vec![
                img(&[0, 3, 6, 2, 5, 8, 1, 4, 7]),
                img(&[0, 5, 7, 4, 6, 2, 8, 1, 3]),
                img(&[3, 4, 5, 6, 7, 8, 0, 1, 2]),
            ]),
        ),
        entry(
            "GL(2,3)",
            &[],
            48,
            TripleToroidal,
            "abc",
            "a^3 = b^3 = c^2 = 1, a^c = a^-1",
            Some("3K6 + 4K4 + 6K2"),
            Some(&[(8, 3), (6, 4), (4, 6)]),
            mats(3, &[[1, 1, 0, 1], [1, 0, 2, 1], [1, 0, 0, 2]]),
        ),
        entry(
            "D8xZ3",
            &[],
            24,
            TripleToroidal,
            "rsc",
            "r^4 = s^2 = (rs)^2 = c^3 = 1, [r,c] = [s,c] = 1",
            Some("3K6"),
            Some(&[(12, 3)]),
            perms(7, &["(0 1 2 3)", "(1 3)", "(4 5 6)"]),
        ),
        entry(
            "Q8xZ3",
            &[],
            24,
            TripleToroidal,
            "ijc",
            "i^4 = 1, i^2 = j^2, i^j = i^-1, c^3 = 1, [i,c] = [j,c] = 1",
            Some("3K6"),
            Some(&[(12, 3)]),
            product(q8(), cyclic(3)),
        ),
        entry(
            "SL(2,3)oZ2",
            &["C2oS4", "SL(2,3)oZ4"],
            48,
            TripleToroidal,
            "xyz",
            "y^3 = z^4 = 1, x^2 = z^2, y^x = y^-1, \
             y^-1zy^-1z^-1y^-1z = xz^-1xy^-1zy = 1",
            Some("3K6 + 4K4 + 6K2"),
            Some(&[(8, 3), (6, 4), (4, 6)]),
            mats(7, &[[1, 1, 5, 6], [4, 1, 0, 2], [0, 1, 6, 0]]),
        ),
    ]
}

/// Lookup key: lowercase, no whitespace or underscores, `x` for products,
/// `:` for semidirect products and `o` for central products.
pub fn normalize_name(name: &str) -> String {
    let mut s: String = name
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .flat_map(char::to_lowercase)
        .collect();
    for (from, to) in [("|x", ":"), ("⋊", ":"), ("rtimes", ":"), ("×", "x"), ("∘", "o"), ("ℤ", "z")] {
        s = s.replace(from, to);
    }
    s.chars()
        .filter(|c| !matches!(c, '{' | '}'))
        .map(|c| match c {
            '₀'..='₉' => char::from(b'0' + (c as u32 - '₀' as u32) as u8),
            c => c,
        })
        .collect()
}

fn registry() -> &'static (Vec<CatalogEntry>, HashMap<String, usize>) {
    static REGISTRY: OnceLock<(Vec<CatalogEntry>, HashMap<String, usize>)> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let list = entries();
        let mut index = HashMap::new();
        for (i, e) in list.iter().enumerate() {
            index.insert(normalize_name(e.name), i);
            for a in e.aliases {
                index.insert(normalize_name(a), i);
            }
        }
        (list, index)
    })
}

/// Every entry, in listing order.
pub fn all() -> &'static [CatalogEntry] {
    &registry().0
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    let (list, index) = registry();
    index
        .get(&normalize_name(name))
        .map(|&i| &list[i])
        .ok_or_else(|| CatalogError::UnknownGroupName(name.to_string()))
}

pub fn is_known(name: &str) -> bool {
    lookup(name).is_ok()
}

pub fn by_family(family: Family) -> Vec<&'static CatalogEntry> {
    all().iter().filter(|e| e.family == family).collect()
}

fn cache() -> &'static Mutex<HashMap<&'static str, Arc<FiniteGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Arc<FiniteGroup>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Builds a catalog group with the default closure cap.
pub fn build(name: &str) -> Result<Arc<FiniteGroup>, CatalogError> {
    build_with_cap(name, DEFAULT_CAP)
}

pub fn build_with_cap(name: &str, cap: usize) -> Result<Arc<FiniteGroup>, CatalogError> {
    build_cached(name, cap, None)
}

/// Builds a catalog group, memoized in memory and optionally as JSON files
/// under `dir`.
pub fn build_cached(
    name: &str,
    cap: usize,
    dir: Option<&Path>,
) -> Result<Arc<FiniteGroup>, CatalogError> {
    let e = lookup(name)?;
    if e.order > cap.max(1) {
        return Err(GroupError::ClosureExceedsCap { cap }.into());
    }
    if let Some(g) = cache().lock().expect("catalog cache").get(e.name) {
        return Ok(g.clone());
    }
    let file = dir.map(|d| d.join(format!("{}.json", file_stem(e.name))));
    let loaded = match &file {
        Some(f) if f.exists() => {
            let text = std::fs::read_to_string(f).map_err(|err| cache_err(f, err))?;
            let g: FiniteGroup = serde_json::from_str(&text).map_err(|err| cache_err(f, err))?;
            (g.order() == e.order).then_some(g)
        }
        _ => None,
    };
    let group = match loaded {
        Some(g) => g,
        None => {
            let g = e.recipe.build(cap)?;
            if let Some(f) = &file {
                if let Some(parent) = f.parent() {
                    std::fs::create_dir_all(parent).map_err(|err| cache_err(parent, err))?;
                }
                let text = serde_json::to_string(&g).map_err(|err| cache_err(f, err))?;
                std::fs::write(f, text).map_err(|err| cache_err(f, err))?;
            }
            g
        }
    };
    let mut guard = cache().lock().expect("catalog cache");
    Ok(guard.entry(e.name).or_insert_with(|| Arc::new(group)).clone())
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn cache_err(path: &Path, err: impl ToString) -> CatalogError {
    CatalogError::Cache { path: path.display().to_string(), reason: err.to_string() }
}

/// Generator letter assignment for an entry's built group.
pub fn generator_map(
    e: &CatalogEntry,
    g: &FiniteGroup,
) -> HashMap<char, usize> {
    e.generator_names.chars().zip(g.generators().iter().copied()).collect()
}

/// Each relation chain of the entry with whether it holds.
pub fn relation_report(name: &str) -> Result<Vec<(String, bool)>, CatalogError> {
    let e = lookup(name)?;
    let g = build(name)?;
    let gens = generator_map(e, &g);
    parse_relations(e.relations)?
        .into_iter()
        .map(|r| Ok((r.source.clone(), r.holds(&g, &gens)?)))
        .collect()
}

/// True iff every defining relation evaluates to the identity.
pub fn verify_relations(name: &str) -> Result<bool, CatalogError> {
    Ok(relation_report(name)?.iter().all(|(_, ok)| *ok))
}

pub fn listing() -> Vec<ListingRow> {
    all()
        .iter()
        .map(|e| ListingRow {
            name: e.name,
            order: e.order,
            genus_class: e.expected_genus_class().to_string(),
            expected_shape: e.expected_descriptor().map(|d| d.to_string()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_normalize() {
        assert_eq!(lookup("(ℤ₃ × ℤ₃) ⋊ Q₈").unwrap().name, "(Z3xZ3):Q8");
        assert_eq!(lookup("SL(2,3) ∘ Z2").unwrap().name, "SL(2,3)oZ2");
        assert_eq!(lookup("C2∘S4").unwrap().name, "SL(2,3)oZ2");
        assert_eq!(lookup("d_18").unwrap().name, "D18");
        assert!(matches!(lookup("D22"), Err(CatalogError::UnknownGroupName(_))));
    }

    #[test]
    fn orders_and_relations() {
        for e in all() {
            let g = build(e.name).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
            assert_eq!(g.generators().len(), e.generator_names.len(), "{}", e.name);
            for (rel, ok) in relation_report(e.name).unwrap() {
                assert!(ok, "{}: {rel}", e.name);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_with_cap("GL(2,3)", 10),
            Err(CatalogError::Group(GroupError::ClosureExceedsCap { cap: 10 }))
        ));
    }

    #[test]
    fn shapes_and_censuses() {
        use crate::graph::recognize;
        for e in all() {
            let g = build(e.name).unwrap();
            let shape = recognize(&g.commuting_graph().unwrap());
            if let Some(expected) = e.expected_descriptor() {
                assert_eq!(shape, expected, "{}", e.name);
            }
            if let Some(c) = e.expected_census() {
                assert_eq!(g.centralizer_census().unwrap(), c, "{}", e.name);
            }
        }
    }
}
