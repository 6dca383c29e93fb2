//! Curve systems: the combinatorial input shared by every certifier.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::word::TwistWord;

/// A positive multi-twist `T_{c_1}^{p_1} ⋯ T_{c_k}^{p_k}` about pairwise
/// disjoint curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    pub name: String,
    pub curves: Vec<String>,
    pub powers: Vec<u64>,
}

impl CurveFamily {
    pub fn new(name: &str, curves: &[(&str, u64)]) -> Self {
        Self {
            name: name.into(),
            curves: curves.iter().map(|(c, _)| String::from(*c)).collect(),
            powers: curves.iter().map(|&(_, p)| p).collect(),
        }
    }

    pub fn single(name: &str, curve: &str, power: u64) -> Self {
        Self::new(name, &[(curve, power)])
    }
}

/// One violated invariant of a [`CurveSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyFamily {
        family: String,
    },
    PowerCountMismatch {
        family: String,
        curves: usize,
        powers: usize,
    },
    NonPositivePower {
        family: String,
        curve: String,
    },
    DuplicateFamily {
        family: String,
    },
    DuplicateCurve {
        curve: String,
    },
    GeomShape {
        expected: usize,
    },
    AlgShape {
        expected: usize,
    },
    AsymmetricGeom {
        a: String,
        b: String,
        ab: u64,
        ba: u64,
    },
    NonzeroDiagonal {
        curve: String,
        value: u64,
    },
    SameFamilyIntersection {
        family: String,
        a: String,
        b: String,
        value: u64,
    },
    AsymmetricAlg {
        a: String,
        b: String,
        ab: u64,
        ba: u64,
    },
    AlgExceedsGeom {
        a: String,
        b: String,
        alg: u64,
        geom: u64,
    },
    AlgParity {
        a: String,
        b: String,
        alg: u64,
        geom: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyFamily { family } => write!(f, "family `{family}` has no curves"),
            PowerCountMismatch {
                family,
                curves,
                powers,
            } => write!(
                f,
                "family `{family}` lists {curves} curves but {powers} powers"
            ),
            NonPositivePower { family, curve } => write!(
                f,
                "power of `{curve}` in family `{family}` must be >= 1 (positive multi-twist)"
            ),
            DuplicateFamily { family } => write!(f, "family name `{family}` is used twice"),
            DuplicateCurve { curve } => write!(f, "curve `{curve}` appears more than once"),
            GeomShape { expected } => {
                write!(f, "geom must be a {expected}x{expected} matrix")
            }
            AlgShape { expected } => {
                write!(f, "alg_abs must be a {expected}x{expected} matrix")
            }
            AsymmetricGeom { a, b, ab, ba } => write!(
                f,
                "geom is not symmetric: ({a},{b}) = {ab} but ({b},{a}) = {ba}"
            ),
            NonzeroDiagonal { curve, value } => {
                write!(f, "geom diagonal must be zero: ({curve},{curve}) = {value}")
            }
            SameFamilyIntersection {
                family,
                a,
                b,
                value,
            } => write!(
                f,
                "curves of family `{family}` must be disjoint: ({a},{b}) = {value}"
            ),
            AsymmetricAlg { a, b, ab, ba } => write!(
                f,
                "alg_abs is not symmetric: ({a},{b}) = {ab} but ({b},{a}) = {ba}"
            ),
            AlgExceedsGeom { a, b, alg, geom } => {
                write!(f, "alg_abs({a},{b}) = {alg} exceeds geom({a},{b}) = {geom}")
            }
            AlgParity { a, b, alg, geom } => write!(
                f,
                "alg_abs({a},{b}) = {alg} and geom({a},{b}) = {geom} differ in parity"
            ),
        }
    }
}

/// Named curve families together with their intersection data.
///
/// Curves are indexed globally in family order: the curves of family 0 come
/// first, then family 1, and so on. Words index families, matrices index
/// curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    families: Vec<CurveFamily>,
    geom: Vec<Vec<u64>>,
    alg_abs: Option<Vec<Vec<u64>>>,
    starts: Vec<usize>,
}

impl CurveSystem {
    /// Builds and validates a system.
    pub fn new(
        families: Vec<CurveFamily>,
        geom: Vec<Vec<u64>>,
        alg_abs: Option<Vec<Vec<u64>>>,
    ) -> Result<Self, Vec<Violation>> {
        let sys = Self::new_unchecked(families, geom, alg_abs);
        let violations = sys.validate();
        if violations.is_empty() {
            Ok(sys)
        } else {
            Err(violations)
        }
    }

    /// Builds a system without checking its invariants; see [`validate`](Self::validate).
    pub fn new_unchecked(
        families: Vec<CurveFamily>,
        geom: Vec<Vec<u64>>,
        alg_abs: Option<Vec<Vec<u64>>>,
    ) -> Self {
        let mut starts = Vec::with_capacity(families.len() + 1);
        let mut acc = 0;
        for f in &families {
            starts.push(acc);
            acc += f.curves.len();
        }
        starts.push(acc);
        Self {
            families,
            geom,
            alg_abs,
            starts,
        }
    }

    /// Checks every invariant and reports all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut family_names = BTreeSet::new();
        let mut curve_names = BTreeSet::new();
        for fam in &self.families {
            if !family_names.insert(fam.name.as_str()) {
                out.push(Violation::DuplicateFamily {
                    family: fam.name.clone(),
                });
            }
            if fam.curves.is_empty() {
                out.push(Violation::EmptyFamily {
                    family: fam.name.clone(),
                });
            }
            if fam.curves.len() != fam.powers.len() {
                out.push(Violation::PowerCountMismatch {
                    family: fam.name.clone(),
                    curves: fam.curves.len(),
                    powers: fam.powers.len(),
                });
            }
            for (c, p) in fam.curves.iter().zip(&fam.powers) {
                if *p == 0 {
                    out.push(Violation::NonPositivePower {
                        family: fam.name.clone(),
                        curve: c.clone(),
                    });
                }
            }
            for c in &fam.curves {
                if !curve_names.insert(c.as_str()) {
                    out.push(Violation::DuplicateCurve { curve: c.clone() });
                }
            }
        }

        let n = self.num_curves();
        if !is_square(&self.geom, n) {
            out.push(Violation::GeomShape { expected: n });
            return out;
        }
        for i in 0..n {
            if self.geom[i][i] != 0 {
                out.push(Violation::NonzeroDiagonal {
                    curve: self.curve_name(i).into(),
                    value: self.geom[i][i],
                });
            }
            for j in (i + 1)..n {
                let (ab, ba) = (self.geom[i][j], self.geom[j][i]);
                if ab != ba {
                    out.push(Violation::AsymmetricGeom {
                        a: self.curve_name(i).into(),
                        b: self.curve_name(j).into(),
                        ab,
                        ba,
                    });
                }
                let fi = self.family_of(i);
                if fi == self.family_of(j) && (ab != 0 || ba != 0) {
                    out.push(Violation::SameFamilyIntersection {
                        family: self.families[fi].name.clone(),
                        a: self.curve_name(i).into(),
                        b: self.curve_name(j).into(),
                        value: ab.max(ba),
                    });
                }
            }
        }

        if let Some(alg) = &self.alg_abs {
            if !is_square(alg, n) {
                out.push(Violation::AlgShape { expected: n });
                return out;
            }
            for i in 0..n {
                for j in i..n {
                    let (a, b) = (self.curve_name(i), self.curve_name(j));
                    if alg[i][j] != alg[j][i] {
                        out.push(Violation::AsymmetricAlg {
                            a: a.into(),
                            b: b.into(),
                            ab: alg[i][j],
                            ba: alg[j][i],
                        });
                    }
                    let (v, g) = (alg[i][j], self.geom[i][j]);
                    if v > g {
                        out.push(Violation::AlgExceedsGeom {
                            a: a.into(),
                            b: b.into(),
                            alg: v,
                            geom: g,
                        });
                    } else if (g - v) % 2 != 0 {
                        out.push(Violation::AlgParity {
                            a: a.into(),
                            b: b.into(),
                            alg: v,
                            geom: g,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn families(&self) -> &[CurveFamily] {
        &self.families
    }

    pub fn family(&self, f: usize) -> &CurveFamily {
        &self.families[f]
    }

    pub fn num_families(&self) -> usize {
        self.families.len()
    }

    pub fn num_curves(&self) -> usize {
        *self.starts.last().unwrap_or(&0)
    }

    /// Global indices of the curves of family `f`.
    pub fn family_curves(&self, f: usize) -> Range<usize> {
        self.starts[f]..self.starts[f + 1]
    }

    pub fn family_of(&self, curve: usize) -> usize {
        // starts is sorted; the last start <= curve wins
        self.starts.partition_point(|&s| s <= curve) - 1
    }

    pub fn family_index(&self, name: &str) -> Option<usize> {
        self.families.iter().position(|f| f.name == name)
    }

    pub fn family_names(&self) -> Vec<&str> {
        self.families.iter().map(|f| f.name.as_str()).collect()
    }

    pub fn curve_name(&self, curve: usize) -> &str {
        let f = self.family_of(curve);
        &self.families[f].curves[curve - self.starts[f]]
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        (0..self.num_curves()).find(|&i| self.curve_name(i) == name)
    }

    /// Twist power of a curve within its family.
    pub fn power(&self, curve: usize) -> u64 {
        let f = self.family_of(curve);
        self.families[f].powers[curve - self.starts[f]]
    }

    pub fn geom(&self, a: usize, b: usize) -> u64 {
        self.geom[a][b]
    }

    pub fn geom_matrix(&self) -> &[Vec<u64>] {
        &self.geom
    }

    pub fn alg_abs(&self, a: usize, b: usize) -> Option<u64> {
        self.alg_abs.as_ref().map(|m| m[a][b])
    }

    pub fn alg_matrix(&self) -> Option<&[Vec<u64>]> {
        self.alg_abs.as_deref()
    }

    /// `(c, F) = Σ_{c' ∈ F} (c, c')`.
    pub fn curve_family_intersection(&self, curve: usize, f: usize) -> u64 {
        self.family_curves(f).map(|c| self.geom[curve][c]).sum()
    }

    /// `(F, G) = Σ_{c ∈ F, c' ∈ G} (c, c')`.
    pub fn family_intersection(&self, f: usize, g: usize) -> u64 {
        self.family_curves(f)
            .map(|c| self.curve_family_intersection(c, g))
            .sum()
    }

    /// True when every family consists of exactly one curve.
    pub fn all_single_curves(&self) -> bool {
        self.families.iter().all(|f| f.curves.len() == 1)
    }

    /// Connected components of the graph on `curves` with an edge wherever
    /// the geometric intersection is positive. Components are sorted.
    pub fn components(&self, curves: &[usize]) -> Vec<Vec<usize>> {
        let mut remaining: BTreeSet<usize> = curves.iter().copied().collect();
        let mut comps = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            remaining.remove(&start);
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(c) = stack.pop() {
                let next: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&d| self.geom[c][d] > 0)
                    .collect();
                for d in next {
                    remaining.remove(&d);
                    comp.push(d);
                    stack.push(d);
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

fn is_square(m: &[Vec<u64>], n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

/// Curve-level support of a word: the curves of the families occurring in
/// its cyclically reduced core, split into intersection-connected pieces.
/// The filled surface itself is not reconstructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub curves: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

pub fn support(w: &TwistWord, sys: &CurveSystem) -> Support {
    let (core, _) = crate::word::cyclic_reduce(w);
    let curves: Vec<usize> = core
        .families()
        .into_iter()
        .filter(|&f| f < sys.num_families())
        .flat_map(|f| sys.family_curves(f))
        .collect();
    let components = sys.components(&curves);
    Support { curves, components }
}

/// Incremental construction by curve name, used by parsers and tests.
#[derive(Debug, Default, Clone)]
pub struct SystemBuilder {
    families: Vec<CurveFamily>,
    geom: Vec<(String, String, u64)>,
    alg: Vec<(String, String, u64)>,
    has_alg: bool,
}

/// Error from [`SystemBuilder::build`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("pair ({0},{1}) is given twice with different values")]
    ConflictingPair(String, String),
    #[error("invalid curve system: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    use alloc::string::ToString;
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl SystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn family(mut self, name: &str, curves: &[(&str, u64)]) -> Self {
        self.families.push(CurveFamily::new(name, curves));
        self
    }

    pub fn push_family(&mut self, family: CurveFamily) {
        self.families.push(family);
    }

    pub fn geom(mut self, a: &str, b: &str, value: u64) -> Self {
        self.set_geom(a, b, value);
        self
    }

    pub fn set_geom(&mut self, a: &str, b: &str, value: u64) {
        self.geom.push((a.into(), b.into(), value));
    }

    pub fn alg(mut self, a: &str, b: &str, value: u64) -> Self {
        self.set_alg(a, b, value);
        self
    }

    pub fn set_alg(&mut self, a: &str, b: &str, value: u64) {
        self.has_alg = true;
        self.alg.push((a.into(), b.into(), value));
    }

    /// Declares algebraic data present even if no pair is listed (all zero).
    pub fn with_alg(mut self) -> Self {
        self.has_alg = true;
        self
    }

    pub fn build(self) -> Result<CurveSystem, BuildError> {
        let skeleton = CurveSystem::new_unchecked(self.families.clone(), Vec::new(), None);
        let n = skeleton.num_curves();
        let fill = |pairs: &[(String, String, u64)]| -> Result<Vec<Vec<u64>>, BuildError> {
            let mut m = vec![vec![0u64; n]; n];
            let mut seen = vec![vec![false; n]; n];
            for (a, b, v) in pairs {
                let i = skeleton
                    .curve_index(a)
                    .ok_or_else(|| BuildError::UnknownCurve(a.clone()))?;
                let j = skeleton
                    .curve_index(b)
                    .ok_or_else(|| BuildError::UnknownCurve(b.clone()))?;
                for (x, y) in [(i, j), (j, i)] {
                    if seen[x][y] && m[x][y] != *v {
                        return Err(BuildError::ConflictingPair(a.clone(), b.clone()));
                    }
                    seen[x][y] = true;
                    m[x][y] = *v;
                }
            }
            Ok(m)
        };
        let geom = fill(&self.geom)?;
        let alg = if self.has_alg {
            Some(fill(&self.alg)?)
        } else {
            None
        };
        CurveSystem::new(self.families, geom, alg).map_err(BuildError::Invalid)
    }
}

/// Two single-curve families `A = {a}` and `B = {b}` with powers `m`, `n`.
pub fn two_curves(ab: u64, alg: Option<u64>, m: u64, n: u64) -> Result<CurveSystem, BuildError> {
    let mut b = SystemBuilder::new()
        .family("A", &[("a", m)])
        .family("B", &[("b", n)])
        .geom("a", "b", ab);
    if let Some(v) = alg {
        b = b.alg("a", "b", v);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lantern_configuration_is_valid() {
        let sys = two_curves(2, Some(0), 1, 1).unwrap();
        assert!(sys.validate().is_empty());
        assert_eq!(sys.family_intersection(0, 1), 2);
    }

    #[test]
    fn parity_violation() {
        let err = two_curves(2, Some(1), 1, 1).unwrap_err();
        match err {
            BuildError::Invalid(v) => {
                assert!(matches!(
                    v[0],
                    Violation::AlgParity {
                        alg: 1,
                        geom: 2,
                        ..
                    }
                ));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn alg_exceeds_geom() {
        let err = two_curves(1, Some(3), 1, 1).unwrap_err();
        assert!(
            matches!(err, BuildError::Invalid(v) if matches!(v[0], Violation::AlgExceedsGeom { .. }))
        );
    }

    #[test]
    fn same_family_disjointness() {
        let err = SystemBuilder::new()
            .family("A", &[("a", 1), ("a2", 1)])
            .family("B", &[("b", 1)])
            .geom("a", "a2", 1)
            .build()
            .unwrap_err();
        let BuildError::Invalid(v) = err else {
            panic!()
        };
        assert_eq!(v.len(), 1);
        assert!(
            matches!(&v[0], Violation::SameFamilyIntersection { family, value: 1, .. } if family == "A")
        );
    }

    #[test]
    fn raw_matrix_violations() {
        let fams = alloc::vec![
            CurveFamily::single("A", "a", 1),
            CurveFamily::single("B", "b", 0)
        ];
        let sys = CurveSystem::new_unchecked(
            fams,
            alloc::vec![alloc::vec![1, 2], alloc::vec![3, 0]],
            None,
        );
        let v = sys.validate();
        assert!(v.contains(&Violation::NonPositivePower {
            family: "B".into(),
            curve: "b".into()
        }));
        assert!(v.contains(&Violation::NonzeroDiagonal {
            curve: "a".into(),
            value: 1
        }));
        assert!(v.contains(&Violation::AsymmetricGeom {
            a: "a".into(),
            b: "b".into(),
            ab: 2,
            ba: 3
        }));
    }

    #[test]
    fn indexing() {
        let sys = SystemBuilder::new()
            .family("A", &[("a1", 1), ("a2", 2)])
            .family("B", &[("b", 3)])
            .geom("a1", "b", 2)
            .geom("a2", "b", 1)
            .build()
            .unwrap();
        assert_eq!(sys.num_curves(), 3);
        assert_eq!(sys.family_of(0), 0);
        assert_eq!(sys.family_of(1), 0);
        assert_eq!(sys.family_of(2), 1);
        assert_eq!(sys.curve_name(2), "b");
        assert_eq!(sys.power(1), 2);
        assert_eq!(sys.family_intersection(0, 1), 3);
        assert_eq!(sys.curve_family_intersection(0, 1), 2);
    }

    #[test]
    fn support_examples() {
        let sys = SystemBuilder::new()
            .family("A", &[("a", 1)])
            .family("B", &[("b", 1)])
            .geom("a", "b", 2)
            .build()
            .unwrap();
        let s = support(&TwistWord::from_pairs(&[(0, 3)]), &sys);
        assert_eq!(s.curves, alloc::vec![0]);
        assert_eq!(s.components.len(), 1);

        let s = support(&TwistWord::from_pairs(&[(0, 1), (1, 1)]), &sys);
        assert_eq!(s.curves, alloc::vec![0, 1]);
        assert_eq!(s.components, alloc::vec![alloc::vec![0, 1]]);

        let disjoint = two_curves(0, None, 1, 1).unwrap();
        let s = support(&TwistWord::from_pairs(&[(0, 1), (1, 1)]), &disjoint);
        assert_eq!(s.components.len(), 2);

        // conjugated generator: support is the generator's curve only
        let s = support(&TwistWord::from_pairs(&[(1, 1), (0, 2), (1, -1)]), &sys);
        assert_eq!(s.curves, alloc::vec![0]);
    }

    proptest::proptest! {
        #[test]
        fn support_rotation_invariant(exps in proptest::collection::vec(1i64..4, 1..5), k in 0usize..8) {
            let sys = SystemBuilder::new()
                .family("A", &[("a", 1)])
                .family("B", &[("b1", 1), ("b2", 1)])
                .family("C", &[("c", 1)])
                .geom("a", "b1", 1)
                .geom("c", "b2", 2)
                .build()
                .unwrap();
            let letters: Vec<(usize, i64)> = exps.iter().enumerate().map(|(i, &e)| (i % 3, e)).collect();
            let w = TwistWord::from_pairs(&letters);
            let (core, _) = crate::word::cyclic_reduce(&w);
            let s0 = support(&core, &sys);
            let s1 = support(&core.rotate(k), &sys);
            proptest::prop_assert_eq!(s0, s1);
        }
    }
}
