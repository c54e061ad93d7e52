//! Rational polyhedral fans and the classes of their toric varieties.
//!
//! A fan is given by primitive integer rays and cones listed as sets of ray
//! indices. Validation completes the face lattice, checks strong convexity,
//! and for simplicial fans checks exactly that cones meet along common faces.
//!
//! The class of the toric variety is computed two ways: the closed formula
//! `[Gm]^n + (1 - χ_c(Σ))·P·[Gm]^(n-1)`, and the stratification by torus
//! orbits `Σ_σ [Gm]^(n - dim σ)·P^(dim σ)` followed by reduction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rat};
use crate::log_ring::{FormalPClass, LogClass};
use crate::motive::MotiveClass;

/// A primitive nonzero lattice vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayVec(Vec<i64>);

impl RayVec {
    pub fn new(coords: Vec<i64>) -> Option<Self> {
        is_primitive(&coords).then_some(Self(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

fn gcd_of(coords: &[i64]) -> i64 {
    coords.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn is_primitive(coords: &[i64]) -> bool {
    gcd_of(coords) == 1
}

/// A cone, as a sorted set of ray indices. The empty set is the zero cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_subset(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains(*r))
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Raw fan data as read from or written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

/// How thoroughly a fan was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Every invariant checked exactly.
    Full,
    /// Some cone is not simplicial; pairwise intersections were not checked.
    Partial,
}

/// Answer of [`Fan::completeness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Incomplete,
    /// The wall condition holds but some probe direction is uncovered.
    Unknown,
}

/// A validated, face-closed fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<RayVec>,
    /// All cones with their dimensions, zero cone included.
    cones: BTreeMap<Cone, usize>,
    validation: Validation,
}

impl Fan {
    pub fn from_spec(spec: &FanSpec) -> Result<Self> {
        validate_fan(spec)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[RayVec] {
        &self.rays
    }

    pub fn validation(&self) -> Validation {
        self.validation
    }

    /// All cones in index order, zero cone first.
    pub fn cones(&self) -> impl Iterator<Item = (&Cone, usize)> {
        self.cones.iter().map(|(c, &d)| (c, d))
    }

    pub fn cone_dim(&self, cone: &Cone) -> Option<usize> {
        self.cones.get(cone).copied()
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    /// Cones not properly contained in another cone.
    pub fn maximal_cones(&self) -> Vec<Cone> {
        maximal(self.cones.keys())
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|(c, &d)| c.len() == d)
    }

    /// Number of cones of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim + 1];
        for &d in self.cones.values() {
            out[d] += 1;
        }
        out
    }

    fn generators(&self, cone: &Cone) -> Vec<&[i64]> {
        cone.rays().iter().map(|&i| self.rays[i].coords()).collect()
    }

    pub fn to_spec(&self) -> FanSpec {
        FanSpec {
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            cones: self.maximal_cones().into_iter().map(|c| c.0).collect(),
        }
    }

    /// Smoothness of each cone: simplicial with generators extending to a
    /// lattice basis (all Smith elementary divisors equal to 1).
    pub fn smoothness(&self) -> Vec<(Cone, bool)> {
        self.cones
            .iter()
            .map(|(c, &d)| (c.clone(), c.len() == d && self.unimodular(c)))
            .collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().iter().all(|(_, s)| *s)
    }

    fn unimodular(&self, cone: &Cone) -> bool {
        if cone.is_empty() {
            return true;
        }
        let matrix: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|r| {
                cone.rays()
                    .iter()
                    .map(|&i| BigInt::from(self.rays[i].0[r]))
                    .collect()
            })
            .collect();
        let divs = linalg::elementary_divisors(&matrix);
        divs.len() == cone.len() && divs.iter().all(One::is_one)
    }

    /// `Σ_σ (-1)^dim σ`, the compactly supported Euler characteristic of
    /// the support.
    pub fn chi_c(&self) -> i64 {
        self.cones
            .values()
            .map(|&d| if d % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Class of the toric variety by the closed formula.
    pub fn toric_class(&self) -> LogClass {
        toric_class_from_chi(self.dim, &BigInt::from(1 - self.chi_c()))
    }

    /// Orbit stratification `Σ_σ [Gm]^(n - dim σ)·P^(dim σ)`, unreduced and
    /// reduced.
    pub fn stratification_class(&self) -> (FormalPClass, LogClass) {
        let gm = MotiveClass::torus();
        let mut formal = FormalPClass::default();
        for &d in self.cones.values() {
            formal.add_to(d, &gm.pow((self.dim - d) as u32));
        }
        let reduced = formal.reduce();
        (formal, reduced)
    }

    /// Whether `w` lies in the (closed) cone, with its coefficients when it
    /// does. Only meaningful for simplicial cones.
    fn coefficients_in(&self, cone: &Cone, w: &[i64]) -> Option<Vec<Rat>> {
        if cone.is_empty() {
            return w.iter().all(|&x| x == 0).then(Vec::new);
        }
        let m = linalg::columns_to_matrix(&self.generators(cone), self.dim);
        let b: Vec<Rat> = w.iter().map(|&x| rat(x)).collect();
        let a = linalg::solve(&m, &b)?;
        a.iter().all(|x| !x.is_negative()).then_some(a)
    }

    /// Star subdivision at the primitive vector `w`.
    pub fn stellar_subdivide(&self, w: &[i64]) -> Result<Fan> {
        if w.len() != self.dim || !is_primitive(w) {
            return Err(Error::BadSubdivisionRay(w.to_vec()));
        }
        if self.rays.iter().any(|r| r.coords() == w) {
            return Err(Error::ExistingRay(w.to_vec()));
        }
        let new_index = self.rays.len();
        let mut covered = false;
        let mut maximal_cones = Vec::new();
        for cone in self.maximal_cones() {
            if self.cones[&cone] != cone.len() {
                return Err(Error::NonSimplicial(cone.0));
            }
            match self.coefficients_in(&cone, w) {
                None => maximal_cones.push(cone.0),
                Some(coeffs) => {
                    covered = true;
                    for (pos, c) in coeffs.iter().enumerate() {
                        if c.is_positive() {
                            let mut replaced = cone.0.clone();
                            replaced[pos] = new_index;
                            maximal_cones.push(replaced);
                        }
                    }
                }
            }
        }
        if !covered {
            return Err(Error::RayOutsideSupport(w.to_vec()));
        }
        let mut rays: Vec<Vec<i64>> = self.rays.iter().map(|r| r.0.clone()).collect();
        rays.push(w.to_vec());
        validate_fan(&FanSpec {
            dim: self.dim,
            rays,
            cones: maximal_cones,
        })
    }

    /// Completeness via the wall condition, cross-checked by probing every
    /// nonzero direction in `{-1, 0, 1}^n`.
    pub fn completeness(&self) -> Result<Completeness> {
        if let Some((c, _)) = self.cones.iter().find(|(c, &d)| c.len() != d) {
            return Err(Error::NonSimplicial(c.0.clone()));
        }
        let maximal = self.maximal_cones();
        if maximal.iter().any(|c| self.cones[c] != self.dim) {
            return Ok(Completeness::Incomplete);
        }
        if self.dim == 0 {
            return Ok(Completeness::Complete);
        }
        for (wall, &d) in &self.cones {
            if d + 1 != self.dim {
                continue;
            }
            let owners = maximal.iter().filter(|m| wall.is_subset(m)).count();
            if owners != 2 {
                return Ok(Completeness::Incomplete);
            }
        }
        let all_probes_covered = probe_directions(self.dim)
            .iter()
            .all(|w| maximal.iter().any(|c| self.coefficients_in(c, w).is_some()));
        Ok(if all_probes_covered {
            Completeness::Complete
        } else {
            Completeness::Unknown
        })
    }

    /// `completeness() == Complete`; errors on non-simplicial fans.
    pub fn is_complete(&self) -> Result<bool> {
        Ok(self.completeness()? == Completeness::Complete)
    }
}

/// `[Gm]^n + c·P·[Gm]^(n-1)`; the class of the point when `n = 0`.
///
/// With `c = 1 - χ_c(Σ)` this is the class of the toric variety of `Σ`;
/// passing `c = χ_c(Q)` gives the class for a fan over a polyhedral
/// complex `Q`.
pub fn toric_class_from_chi(n: usize, c: &BigInt) -> LogClass {
    if n == 0 {
        return LogClass::one();
    }
    let gm = MotiveClass::torus();
    LogClass::new(gm.pow(n as u32), gm.pow(n as u32 - 1).scale(c))
}

fn probe_directions(dim: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                [-1, 0, 1].into_iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|w| w.iter().any(|&x| x != 0));
    out
}

fn maximal<'a>(cones: impl Iterator<Item = &'a Cone> + Clone) -> Vec<Cone> {
    cones
        .clone()
        .filter(|c| !cones.clone().any(|o| o.len() > c.len() && c.is_subset(o)))
        .cloned()
        .collect()
}

/// Faces of the cone spanned by `gens` (indices into `rays`), the cone
/// itself included.
fn faces(gens: &[usize], rays: &[Vec<i64>], dim: usize) -> BTreeSet<Cone> {
    let vecs: Vec<&[i64]> = gens.iter().map(|&i| rays[i].as_slice()).collect();
    let d = linalg::rank_of_vectors(&vecs, dim);
    let mut out = BTreeSet::new();
    if d == gens.len() {
        for size in 0..=gens.len() {
            for s in linalg::subsets_of_size(gens.len(), size) {
                out.insert(Cone::new(s.into_iter().map(|i| gens[i])));
            }
        }
        return out;
    }
    out.insert(Cone::new(gens.iter().copied()));
    for facet in facets(gens, rays, dim, d) {
        out.extend(faces(&facet, rays, dim));
    }
    out
}

/// Facets of a pointed, non-simplicial cone of dimension `d`.
fn facets(gens: &[usize], rays: &[Vec<i64>], dim: usize, d: usize) -> BTreeSet<Vec<usize>> {
    let vecs: Vec<&[i64]> = gens.iter().map(|&i| rays[i].as_slice()).collect();
    // Coordinates of every generator in a basis of the linear span.
    let mut basis: Vec<&[i64]> = Vec::new();
    for v in &vecs {
        let mut trial = basis.clone();
        trial.push(v);
        if linalg::rank_of_vectors(&trial, dim) == trial.len() {
            basis = trial;
        }
    }
    let bm = linalg::columns_to_matrix(&basis, dim);
    let coords: Vec<Vec<Rat>> = vecs
        .iter()
        .map(|v| {
            let b: Vec<Rat> = v.iter().map(|&x| rat(x)).collect();
            linalg::solve(&bm, &b).expect("generator lies in its own span")
        })
        .collect();
    let mut out = BTreeSet::new();
    for subset in linalg::subsets_of_size(gens.len(), d - 1) {
        // Rows are the chosen generators; the normal spans the kernel.
        let m: Vec<Vec<Rat>> = subset.iter().map(|&i| coords[i].clone()).collect();
        let ker = linalg::kernel(&m, d);
        if ker.len() != 1 {
            continue;
        }
        let normal = &ker[0];
        let values: Vec<Rat> = coords
            .iter()
            .map(|c| c.iter().zip(normal).map(|(a, b)| a * b).sum())
            .collect();
        let nonneg = values.iter().all(|x| !x.is_negative());
        let nonpos = values.iter().all(|x| !x.is_positive());
        if nonneg || nonpos {
            out.insert(
                values
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| x.is_zero())
                    .map(|(i, _)| gens[i])
                    .collect(),
            );
        }
    }
    out
}

/// Checks a raw fan, completes it to the full face lattice, and for
/// simplicial input verifies that any two cones meet in a common face.
pub fn validate_fan(spec: &FanSpec) -> Result<Fan> {
    let dim = spec.dim;
    for (index, r) in spec.rays.iter().enumerate() {
        if r.len() != dim {
            return Err(Error::RayDimension {
                index,
                expected: dim,
                found: r.len(),
            });
        }
        if r.iter().all(|&x| x == 0) {
            return Err(Error::ZeroRay { index });
        }
        if !is_primitive(r) {
            return Err(Error::NonPrimitiveRay {
                index,
                coords: r.clone(),
            });
        }
        if let Some(first) = spec.rays[..index].iter().position(|o| o == r) {
            return Err(Error::RepeatedRay {
                first,
                second: index,
            });
        }
    }

    let mut listed = BTreeSet::new();
    for raw in &spec.cones {
        if let Some(&index) = raw.iter().find(|&&i| i >= spec.rays.len()) {
            return Err(Error::RayIndexOutOfRange {
                cone: raw.clone(),
                index,
            });
        }
        let cone = Cone::new(raw.iter().copied());
        let gens: Vec<Vec<i64>> = cone.rays().iter().map(|&i| spec.rays[i].clone()).collect();
        if linalg::positive_circuit(&gens, dim).is_some() {
            return Err(Error::NotStronglyConvex(cone.0));
        }
        listed.insert(cone);
    }

    let mut cones = BTreeMap::new();
    cones.insert(Cone::zero(), 0);
    for cone in maximal(listed.iter()) {
        for face in faces(cone.rays(), &spec.rays, dim) {
            cones.entry(face).or_insert_with_key(|face| {
                let vecs: Vec<&[i64]> = face.rays().iter().map(|&i| spec.rays[i].as_slice()).collect();
                linalg::rank_of_vectors(&vecs, dim)
            });
        }
    }

    let simplicial = cones.iter().all(|(c, &d)| c.len() == d);
    let validation = if simplicial {
        let maximal_cones = maximal(cones.keys());
        for (i, a) in maximal_cones.iter().enumerate() {
            for b in &maximal_cones[i + 1..] {
                if !meet_in_common_face(a, b, &spec.rays, dim) {
                    return Err(Error::ConeIntersection {
                        first: a.0.clone(),
                        second: b.0.clone(),
                    });
                }
            }
        }
        Validation::Full
    } else {
        Validation::Partial
    };

    Ok(Fan {
        dim,
        rays: spec.rays.iter().cloned().map(RayVec).collect(),
        cones,
        validation,
    })
}

/// For simplicial cones `σ`, `τ`: is `σ ∩ τ` the cone on their shared rays?
///
/// Nonnegative solutions of `Σ a_i s_i = Σ b_j t_j` form a pointed cone whose
/// extreme rays are positive circuits of the columns `[s | -t]`. The
/// intersection is a common face iff every such circuit only uses shared
/// rays.
fn meet_in_common_face(a: &Cone, b: &Cone, rays: &[Vec<i64>], dim: usize) -> bool {
    let mut columns: Vec<Vec<i64>> = a.rays().iter().map(|&i| rays[i].clone()).collect();
    columns.extend(
        b.rays()
            .iter()
            .map(|&i| rays[i].iter().map(|x| -x).collect::<Vec<_>>()),
    );
    let ray_of = |col: usize| {
        if col < a.len() {
            a.rays()[col]
        } else {
            b.rays()[col - a.len()]
        }
    };
    linalg::positive_circuits(&columns, dim)
        .iter()
        .all(|circuit| circuit.iter().all(|&col| {
            let r = ray_of(col);
            a.contains(r) && b.contains(r)
        }))
}

/// Standard fans used throughout tests and the CLI.
pub mod presets {
    use super::{Fan, FanSpec};

    fn build(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Fan {
        Fan::from_spec(&FanSpec { dim, rays, cones }).expect("preset fans are valid")
    }

    fn unit(n: usize, i: usize) -> Vec<i64> {
        (0..n).map(|j| i64::from(i == j)).collect()
    }

    /// One smooth cone spanned by the standard basis.
    pub fn affine_space(n: usize) -> Fan {
        build(n, (0..n).map(|i| unit(n, i)).collect(), vec![(0..n).collect()])
    }

    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        rays.push(vec![-1; n]);
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        build(n, rays, cones)
    }

    pub fn projective_line() -> Fan {
        projective_space(1)
    }

    pub fn projective_plane() -> Fan {
        projective_space(2)
    }

    pub fn p1_times_p1() -> Fan {
        build(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
    }

    /// `A² \ 0`: two rays and no two-dimensional cone.
    pub fn punctured_plane() -> Fan {
        build(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0], vec![1]])
    }

    /// The point.
    pub fn point() -> Fan {
        build(0, vec![], vec![])
    }
}

/// Primitive vector along the sum of the generators of `cone`; the ray of
/// the blowup of the corresponding orbit closure.
pub fn barycentric_ray(fan: &Fan, cone: &Cone) -> Vec<i64> {
    let mut w = vec![0i64; fan.dim()];
    for &i in cone.rays() {
        for (x, y) in w.iter_mut().zip(fan.rays()[i].coords()) {
            *x += y;
        }
    }
    let g = gcd_of(&w);
    if g > 1 {
        w.iter_mut().for_each(|x| *x /= g);
    }
    w
}

/// Applies up to `steps` stellar subdivisions at barycentric rays of cones
/// chosen by `pick`, which receives the number of candidate cones.
pub fn refine_with(fan: &Fan, steps: usize, mut pick: impl FnMut(usize) -> usize) -> Fan {
    let mut current = fan.clone();
    for _ in 0..steps {
        let candidates: Vec<Cone> = current
            .cones()
            .filter(|(_, d)| *d >= 2)
            .map(|(c, _)| c.clone())
            .collect();
        if candidates.is_empty() {
            break;
        }
        let cone = &candidates[pick(candidates.len())];
        let w = barycentric_ray(&current, cone);
        if let Ok(next) = current.stellar_subdivide(&w) {
            current = next;
        }
    }
    current
}
