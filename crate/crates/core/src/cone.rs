//! Rational polyhedral cones: extreme rays, strictly positive functionals,
//! deterministic triangulations, and adjoint polynomials.
//!
//! All geometric predicates (redundancy, visibility, volumes) are decided by
//! exact rational arithmetic; the placing triangulation and the
//! random-lifting regular triangulation are two independent routes to the
//! same adjoint polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

use crate::lp::{in_conic_hull, strictly_positive_functional};
use crate::matrix::RationalMatrix;
use crate::poly::{Exponent, Polynomial};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::{Error, Result};

/// A ray through the origin, stored as any nonzero representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ray {
    coords: Vec<Rat>,
}

impl Ray {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.iter().all(Rat::is_zero) {
            return Err(Error::ZeroRay);
        }
        Ok(Ray { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Ray::new(coords.iter().map(|&x| crate::rational::rat_int(x)).collect())
            .expect("nonzero ray")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Primitive integer representative: denominators cleared, divided by
    /// the gcd, orientation preserved. Rays are half-lines, so two vectors
    /// represent the same ray exactly when their primitive forms agree.
    pub fn canonical_ints(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        if !gcd.is_zero() && !gcd.is_one() {
            for v in ints.iter_mut() {
                *v = &*v / &gcd;
            }
        }
        ints
    }

    pub fn canonical(&self) -> Ray {
        Ray {
            coords: self
                .canonical_ints()
                .into_iter()
                .map(Rat::from_integer)
                .collect(),
        }
    }

    /// Positive-scalar equivalence of rays.
    pub fn equivalent(&self, other: &Ray) -> bool {
        self.dim() == other.dim() && self.canonical_ints() == other.canonical_ints()
    }

    pub fn scale(&self, factor: &Rat) -> Result<Ray> {
        if factor.is_zero() {
            return Err(Error::ZeroRay);
        }
        Ray::new(self.coords.iter().map(|c| c * factor).collect())
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One simplicial cone of a triangulation: `ambient_dim` extreme rays and
/// the absolute determinant of their coordinate matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SimplicialPiece {
    #[serde(skip)]
    pub rays: Vec<Ray>,
    /// Indices into the cone's vertex-ray list.
    pub vertex_indices: Vec<usize>,
    #[serde(serialize_with = "serialize_rat")]
    pub volume: Rat,
}

fn serialize_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rat(r))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Triangulation {
    pub pieces: Vec<SimplicialPiece>,
}

impl Triangulation {
    pub fn total_volume(&self) -> Rat {
        self.pieces.iter().map(|p| p.volume.clone()).sum()
    }
}

/// Convex polyhedral cone given by finitely many generating rays, with the
/// extreme (irredundant) subset cached.
#[derive(Clone, PartialEq, Debug)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<Ray>,
    /// Indices of generators that are extreme rays, ascending.
    extreme: Vec<usize>,
    /// Canonical representatives of the extreme rays in placing order.
    vertices: Vec<Vec<Rat>>,
}

/// Irredundant sub-list of a set of rays: a ray is dropped exactly when it
/// is a nonnegative combination of the others.
pub fn extreme_rays(rays: &[Ray]) -> Result<Vec<Ray>> {
    let cone = Cone::from_rays(rays.to_vec())?;
    Ok(cone
        .extreme
        .iter()
        .map(|&i| cone.generators[i].clone())
        .collect())
}

fn placing_key(v: &[Rat]) -> (Rat, Vec<Rat>) {
    let norm: Rat = v.iter().map(Rat::abs).sum();
    (norm, v.to_vec())
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    fill(&mut out, &mut current, 0, n, d);
    return out;

    fn fill(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, start: usize, n: usize, d: usize) {
        if current.len() == d {
            out.push(current.clone());
            return;
        }
        let need = d - current.len();
        for i in start..=(n - need) {
            current.push(i);
            fill(out, current, i + 1, n, d);
            current.pop();
        }
    }
}

impl Cone {
    pub fn from_rays(generators: Vec<Ray>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::EmptyGenerators);
        };
        Self::new(first.dim(), generators)
    }

    pub fn new(ambient_dim: usize, generators: Vec<Ray>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &generators {
            if g.dim() != ambient_dim {
                return Err(Error::RayDimMismatch {
                    dim: g.dim(),
                    expected: ambient_dim,
                });
            }
        }
        // first occurrence of each ray up to equivalence
        let mut unique: Vec<(usize, Vec<BigInt>)> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let canon = g.canonical_ints();
            if !unique.iter().any(|(_, c)| *c == canon) {
                unique.push((i, canon));
            }
        }
        let as_rat: Vec<Vec<Rat>> = unique
            .iter()
            .map(|(_, c)| c.iter().cloned().map(Rat::from_integer).collect())
            .collect();
        let mut extreme = Vec::new();
        for (k, (i, _)) in unique.iter().enumerate() {
            let others: Vec<Vec<Rat>> = as_rat
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| v.clone())
                .collect();
            if others.is_empty() || !in_conic_hull(&others, &as_rat[k]) {
                extreme.push(*i);
            }
        }
        extreme.sort_unstable();
        let mut vertices: Vec<Vec<Rat>> = extreme
            .iter()
            .map(|&i| {
                generators[i]
                    .canonical_ints()
                    .into_iter()
                    .map(Rat::from_integer)
                    .collect()
            })
            .collect();
        vertices.sort_by_key(|v| placing_key(v));
        Ok(Cone {
            ambient_dim,
            generators,
            extreme,
            vertices,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Ray] {
        &self.generators
    }

    /// Extreme generators, in input order.
    pub fn extreme_rays(&self) -> Vec<Ray> {
        self.extreme
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect()
    }

    /// Canonical primitive-integer vertex rays, in the deterministic order
    /// used by the triangulations and the adjoint.
    pub fn vertex_rays(&self) -> Vec<Ray> {
        self.vertices
            .iter()
            .map(|v| Ray::new(v.clone()).expect("vertex rays nonzero"))
            .collect()
    }

    pub fn num_vertex_rays(&self) -> usize {
        self.vertices.len()
    }

    fn vertex_matrix_rank(&self) -> usize {
        RationalMatrix::from_rows(self.vertices.clone()).rank()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertex_matrix_rank() == self.ambient_dim
    }

    /// Membership of a point in the cone, by exact LP over the generators.
    pub fn contains(&self, point: &[Rat]) -> bool {
        let rays: Vec<Vec<Rat>> = self
            .generators
            .iter()
            .map(|g| g.coords().to_vec())
            .collect();
        in_conic_hull(&rays, point)
    }

    /// A rational `w` with `w . r > 0` for every extreme ray: coordinate
    /// functionals and the vertex sum are tried first, then an exact LP.
    /// Fails exactly when the cone is not pointed.
    pub fn positive_functional(&self) -> Result<Vec<Rat>> {
        let strictly_positive = |w: &[Rat]| self.vertices.iter().all(|v| dot(w, v).is_positive());
        for j in 0..self.ambient_dim {
            let mut w = vec![Rat::zero(); self.ambient_dim];
            w[j] = Rat::one();
            if strictly_positive(&w) {
                return Ok(w);
            }
        }
        let mut sum = vec![Rat::zero(); self.ambient_dim];
        for v in &self.vertices {
            for (s, c) in sum.iter_mut().zip(v) {
                *s += c;
            }
        }
        if strictly_positive(&sum) {
            return Ok(sum);
        }
        strictly_positive_functional(&self.vertices).ok_or(Error::NotPointedOrNoCommonSide)
    }

    fn check_triangulable(&self) -> Result<Vec<Rat>> {
        let rank = self.vertex_matrix_rank();
        if rank != self.ambient_dim {
            return Err(Error::NotFullDimensional {
                rank,
                ambient: self.ambient_dim,
            });
        }
        self.positive_functional()
    }

    /// Signed determinant of the listed vertices plus one query row.
    fn orient(&self, facet: &[usize], query: &[Rat]) -> Rat {
        let mut rows: Vec<Vec<Rat>> = facet.iter().map(|&i| self.vertices[i].clone()).collect();
        rows.push(query.to_vec());
        RationalMatrix::from_rows(rows).det().expect("square")
    }

    fn simplex_det(&self, indices: &[usize]) -> Rat {
        let rows: Vec<Vec<Rat>> = indices.iter().map(|&i| self.vertices[i].clone()).collect();
        RationalMatrix::from_rows(rows).det().expect("square")
    }

    /// Placing (incremental beneath-beyond) triangulation on the vertex
    /// rays, deterministic for a fixed input cone. Visibility decisions are
    /// exact determinant signs; scaling a ray by a positive factor does not
    /// change them, so the structure only depends on the cone.
    fn triangulate_indices(&self) -> Result<Vec<Vec<usize>>> {
        let w = self.check_triangulable()?;
        let d = self.ambient_dim;
        let n = self.vertices.len();
        // greedy seed: first d rank-increasing points in placing order
        let mut seed: Vec<usize> = Vec::with_capacity(d);
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..n {
            rows.push(self.vertices[i].clone());
            if RationalMatrix::from_rows(rows.clone()).rank() == seed.len() + 1 {
                seed.push(i);
            } else {
                rows.pop();
            }
            if seed.len() == d {
                break;
            }
        }
        debug_assert_eq!(seed.len(), d);
        // interior reference point: centroid of the scaled seed simplex
        let mut interior = vec![Rat::zero(); d];
        for &i in &seed {
            let scale = dot(&w, &self.vertices[i]);
            for (acc, c) in interior.iter_mut().zip(&self.vertices[i]) {
                *acc += c / &scale;
            }
        }

        let mut simplices: Vec<Vec<usize>> = vec![seed.clone()];
        // boundary facets with a sign making `sign * orient(facet, p) > 0`
        // mean "p strictly beyond"
        let mut facets: Vec<(Vec<usize>, i8)> = Vec::new();
        let push_facet = |facets: &mut Vec<(Vec<usize>, i8)>, verts: Vec<usize>| {
            let det = self.orient(&verts, &interior);
            debug_assert!(!det.is_zero(), "interior point on facet hyperplane");
            let sign = if det.is_positive() { -1 } else { 1 };
            facets.push((verts, sign));
        };
        for k in 0..d {
            let mut verts = seed.clone();
            verts.remove(k);
            push_facet(&mut facets, verts);
        }

        for p in 0..n {
            if seed.contains(&p) {
                continue;
            }
            let point = &self.vertices[p];
            let mut visible = vec![false; facets.len()];
            let mut any = false;
            for (fi, (verts, sign)) in facets.iter().enumerate() {
                let det = self.orient(verts, point);
                let beyond = match sign {
                    1 => det.is_positive(),
                    _ => det.is_negative(),
                };
                if beyond {
                    visible[fi] = true;
                    any = true;
                }
            }
            assert!(any, "extreme ray inside current hull");
            // ridges of visible facets; horizon = contained in exactly one
            let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for (fi, (verts, _)) in facets.iter().enumerate() {
                if !visible[fi] {
                    continue;
                }
                for k in 0..verts.len() {
                    let mut ridge = verts.clone();
                    ridge.remove(k);
                    *ridge_count.entry(ridge).or_insert(0) += 1;
                }
            }
            for (fi, (verts, _)) in facets.iter().enumerate() {
                if !visible[fi] {
                    continue;
                }
                let mut cell = verts.clone();
                cell.push(p);
                cell.sort_unstable();
                simplices.push(cell);
            }
            let mut next_facets: Vec<(Vec<usize>, i8)> = facets
                .iter()
                .enumerate()
                .filter(|(fi, _)| !visible[*fi])
                .map(|(_, f)| f.clone())
                .collect();
            for (ridge, count) in ridge_count {
                if count != 1 {
                    continue;
                }
                let mut verts = ridge;
                verts.push(p);
                verts.sort_unstable();
                push_facet(&mut next_facets, verts);
            }
            facets = next_facets;
        }
        Ok(simplices)
    }

    pub fn triangulate(&self) -> Result<Triangulation> {
        let indices = self.triangulate_indices()?;
        Ok(self.triangulation_from_indices(indices))
    }

    fn triangulation_from_indices(&self, indices: Vec<Vec<usize>>) -> Triangulation {
        let vertex_rays = self.vertex_rays();
        let pieces = indices
            .into_iter()
            .map(|cell| {
                let volume = self.simplex_det(&cell).abs();
                debug_assert!(volume.is_positive());
                SimplicialPiece {
                    rays: cell.iter().map(|&i| vertex_rays[i].clone()).collect(),
                    vertex_indices: cell,
                    volume,
                }
            })
            .collect();
        Triangulation { pieces }
    }

    /// Regular triangulation from a random integer lifting of the
    /// cross-section points: a vertex subset is a cell exactly when the
    /// affine interpolation of its heights lies strictly below every other
    /// lifted point. Redraws the lifting on ties.
    pub fn triangulate_regular(&self, seed: u64) -> Result<Triangulation> {
        let w = self.check_triangulable()?;
        let d = self.ambient_dim;
        let n = self.vertices.len();
        let scaled: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| {
                let s = dot(&w, v);
                v.iter().map(|c| c / &s).collect()
            })
            .collect();
        let subsets = combinations(n, d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        'attempt: for _ in 0..64 {
            let heights: Vec<Rat> = (0..n)
                .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(0u64..1 << 40))))
                .collect();
            let mut cells: Vec<Vec<usize>> = Vec::new();
            for subset in &subsets {
                let m = RationalMatrix::from_rows(
                    subset.iter().map(|&i| scaled[i].clone()).collect(),
                );
                let Ok(inv) = m.inverse() else { continue };
                let h: Vec<Rat> = subset.iter().map(|&i| heights[i].clone()).collect();
                // affine functional matching the lifted subset
                let a = inv.mul_vec(&h).expect("dim");
                let mut is_cell = true;
                for q in 0..n {
                    if subset.contains(&q) {
                        continue;
                    }
                    let val = dot(&a, &scaled[q]);
                    if val == heights[q] {
                        continue 'attempt; // non-generic lifting
                    }
                    if val > heights[q] {
                        is_cell = false;
                        break;
                    }
                }
                if is_cell {
                    cells.push(subset.clone());
                }
            }
            return Ok(self.triangulation_from_indices(cells));
        }
        unreachable!("random lifting failed to become generic");
    }

    /// Adjoint polynomial from the canonical vertex representatives:
    /// sum over triangulation pieces of `Vol(piece)` times the product of
    /// the linear forms of the vertices outside the piece.
    pub fn adjoint(&self) -> Result<Polynomial> {
        let t = self.triangulate()?;
        self.adjoint_from(&t, &self.vertex_rays())
    }

    /// Adjoint with caller-chosen vertex representatives, aligned with
    /// `vertex_rays()` order; exposes the scaling covariance of the formula.
    pub fn adjoint_with_reps(&self, reps: &[Ray]) -> Result<Polynomial> {
        let t = self.triangulate()?;
        self.adjoint_from(&t, reps)
    }

    pub fn adjoint_from(&self, t: &Triangulation, reps: &[Ray]) -> Result<Polynomial> {
        let d = self.ambient_dim;
        let n = self.vertices.len();
        assert_eq!(reps.len(), n, "one representative per vertex ray");
        let mut acc = Polynomial::zero(d);
        for piece in &t.pieces {
            let m = RationalMatrix::from_rows(
                piece
                    .vertex_indices
                    .iter()
                    .map(|&i| reps[i].coords().to_vec())
                    .collect(),
            );
            let mut term = Polynomial::constant(d, m.det()?.abs());
            for i in 0..n {
                if piece.vertex_indices.contains(&i) {
                    continue;
                }
                let form = Polynomial::from_terms(
                    d,
                    (0..d).map(|j| (Exponent::unit(d, j), reps[i].coords()[j].clone())),
                )?;
                term = term.mul(&form)?;
            }
            acc = acc.add(&term)?;
        }
        debug_assert!(acc.is_homogeneous());
        Ok(acc)
    }

    /// Image cone under a nonsingular matrix (rays mapped as columns).
    pub fn transform(&self, a: &RationalMatrix) -> Result<Cone> {
        if a.rows() != self.ambient_dim || a.cols() != self.ambient_dim {
            return Err(Error::MatrixNotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if a.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let generators = self
            .generators
            .iter()
            .map(|g| Ray::new(a.mul_vec(g.coords())?))
            .collect::<Result<Vec<_>>>()?;
        Cone::new(self.ambient_dim, generators)
    }

    /// Exactly verifies the transform law of the adjoint: the adjoint of
    /// the image cone (computed with the mapped representatives) equals
    /// `|det A|` times the adjoint precomposed with the transpose.
    pub fn adjoint_transform_check(&self, a: &RationalMatrix) -> Result<bool> {
        let transformed = self.transform(a)?;
        // map this cone's canonical vertices through `a` and align them
        // with the transformed cone's own vertex order
        let mapped: Vec<Ray> = self
            .vertex_rays()
            .iter()
            .map(|v| Ray::new(a.mul_vec(v.coords()).expect("dim")).expect("nonsingular image"))
            .collect();
        let mut aligned: Vec<Option<Ray>> = vec![None; transformed.num_vertex_rays()];
        let targets = transformed.vertex_rays();
        for m in &mapped {
            let slot = targets
                .iter()
                .position(|t| t.equivalent(m))
                .expect("mapped vertex must remain a vertex");
            aligned[slot] = Some(m.clone());
        }
        let reps: Vec<Ray> = aligned
            .into_iter()
            .map(|r| r.expect("bijection between vertex sets"))
            .collect();
        let lhs = transformed.adjoint_with_reps(&reps)?;
        let rhs = self
            .adjoint()?
            .substitute_matrix(&a.transpose())?
            .scale(&a.det()?.abs());
        Ok(lhs == rhs)
    }

    /// Maps the cone into the nonnegative orthant through the inverse of
    /// the enclosing-simplex matrix (simplex rays as columns). The simplex
    /// must contain every extreme ray, with rays `1..d` forming a common
    /// face with the cone.
    pub fn orthantal_reduce(&self, simplex_rays: &[Ray]) -> Result<(Cone, RationalMatrix)> {
        let d = self.ambient_dim;
        if simplex_rays.len() != d {
            return Err(Error::OrthantalReduction(format!(
                "expected {d} simplex rays, got {}",
                simplex_rays.len()
            )));
        }
        let mut a = RationalMatrix::zero(d, d);
        for (j, r) in simplex_rays.iter().enumerate() {
            if r.dim() != d {
                return Err(Error::RayDimMismatch {
                    dim: r.dim(),
                    expected: d,
                });
            }
            for (i, c) in r.coords().iter().enumerate() {
                if c.is_negative() {
                    return Err(Error::OrthantalReduction(
                        "simplex ray with a negative entry".into(),
                    ));
                }
                a.set(i, j, c.clone());
            }
        }
        if a.det()?.is_zero() {
            return Err(Error::OrthantalReduction("simplex rays are singular".into()));
        }
        let hull: Vec<Vec<Rat>> = simplex_rays.iter().map(|r| r.coords().to_vec()).collect();
        for v in &self.vertices {
            if !in_conic_hull(&hull, v) {
                return Err(Error::OrthantalReduction(
                    "an extreme ray escapes the enclosing simplex".into(),
                ));
            }
        }
        let extreme = self.vertex_rays();
        for r in &simplex_rays[1..] {
            if !extreme.iter().any(|e| e.equivalent(r)) {
                return Err(Error::OrthantalReduction(
                    "simplex rays 1.. must be extreme rays of the cone (shared face)".into(),
                ));
            }
        }
        let reduced = self.transform(&a.inverse()?)?;
        Ok((reduced, a))
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    ambient_dim: usize,
    rays: Vec<Vec<String>>,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = ConeJson {
            ambient_dim: self.ambient_dim,
            rays: self
                .generators
                .iter()
                .map(|g| g.coords().iter().map(format_rat).collect())
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = ConeJson::deserialize(deserializer)?;
        let mut rays = Vec::with_capacity(json.rays.len());
        for r in json.rays {
            let mut coords = Vec::with_capacity(r.len());
            for c in r {
                coords.push(parse_rat(&c).map_err(D::Error::custom)?);
            }
            rays.push(Ray::new(coords).map_err(D::Error::custom)?);
        }
        Cone::new(json.ambient_dim, rays).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    pub fn square_cone() -> Cone {
        Cone::from_rays(vec![
            Ray::from_i64(&[1, 0, 0]),
            Ray::from_i64(&[1, -1, 0]),
            Ray::from_i64(&[1, 0, -1]),
            Ray::from_i64(&[1, -1, -1]),
        ])
        .unwrap()
    }

    #[test]
    fn ray_canonicalization() {
        let r = Ray::new(vec![rat(2, 3), rat(4, 3)]).unwrap();
        assert_eq!(
            r.canonical_ints(),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        // orientation is preserved: a ray and its opposite are distinct
        let neg = Ray::from_i64(&[0, -2, -4]);
        assert_eq!(
            neg.canonical_ints(),
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(-2)]
        );
        let mixed = Ray::from_i64(&[-2, 4]);
        assert_eq!(
            mixed.canonical_ints(),
            vec![BigInt::from(-1), BigInt::from(2)]
        );
        assert!(Ray::from_i64(&[3, 6]).equivalent(&Ray::from_i64(&[1, 2])));
        assert!(!Ray::from_i64(&[1, 2]).equivalent(&Ray::from_i64(&[-1, -2])));
        assert!(Ray::new(vec![rat_int(0), rat_int(0)]).is_err());
    }

    #[test]
    fn extreme_rays_examples() {
        // middle ray is the sum of the outer two
        let rays = vec![
            Ray::from_i64(&[1, 0, 0]),
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[1, 1, 0]),
        ];
        let ext = extreme_rays(&rays).unwrap();
        assert_eq!(ext.len(), 2);
        assert!(ext[0].equivalent(&rays[0]) && ext[1].equivalent(&rays[1]));

        let single = vec![Ray::from_i64(&[2, 5])];
        assert_eq!(extreme_rays(&single).unwrap().len(), 1);

        // all five rays irredundant (checked by hand against the defining LP:
        // matching the first coordinate forces a negative coefficient)
        let five = vec![
            Ray::from_i64(&[1, 1, 1, 0]),
            Ray::from_i64(&[1, 1, 0, 1]),
            Ray::from_i64(&[0, 1, 0, 0]),
            Ray::from_i64(&[0, 0, 1, 0]),
            Ray::from_i64(&[0, 0, 0, 1]),
        ];
        assert_eq!(extreme_rays(&five).unwrap().len(), 5);
        assert!(extreme_rays(&[]).is_err());
    }

    #[test]
    fn duplicate_generators_collapse() {
        let rays = vec![
            Ray::from_i64(&[1, 0]),
            Ray::from_i64(&[2, 0]),
            Ray::from_i64(&[0, 1]),
        ];
        let cone = Cone::from_rays(rays).unwrap();
        assert_eq!(cone.num_vertex_rays(), 2);
    }

    #[test]
    fn positive_functional_cases() {
        let square = square_cone();
        let w = square.positive_functional().unwrap();
        assert_eq!(w, vec![rat_int(1), rat_int(0), rat_int(0)]);
        let orthant = Cone::from_rays(vec![
            Ray::from_i64(&[1, 0]),
            Ray::from_i64(&[0, 1]),
        ])
        .unwrap();
        assert_eq!(orthant.positive_functional().unwrap(), vec![rat_int(1), rat_int(1)]);
        let line = Cone::from_rays(vec![Ray::from_i64(&[1, 0]), Ray::from_i64(&[-1, 0])]).unwrap();
        assert_eq!(
            line.positive_functional(),
            Err(Error::NotPointedOrNoCommonSide)
        );
    }

    #[test]
    fn simplicial_cone_is_its_own_triangulation() {
        let cone = Cone::from_rays(vec![
            Ray::from_i64(&[1, 2, 3]),
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
        ])
        .unwrap();
        let t = cone.triangulate().unwrap();
        assert_eq!(t.pieces.len(), 1);
        assert_eq!(t.pieces[0].volume, rat_int(1));
        assert_eq!(cone.adjoint().unwrap(), Polynomial::one(3));
    }

    #[test]
    fn square_cone_triangulation_and_adjoint() {
        let cone = square_cone();
        let t = cone.triangulate().unwrap();
        assert_eq!(t.pieces.len(), 2);
        assert_eq!(t.total_volume(), rat_int(2));
        let adj = cone.adjoint().unwrap();
        assert_eq!(
            adj,
            Polynomial::parse_text("2*t0 - t1 - t2", Some(3)).unwrap()
        );
    }

    #[test]
    fn regular_triangulation_agrees_on_square() {
        let cone = square_cone();
        let placing = cone.triangulate().unwrap();
        for seed in [1u64, 2, 3] {
            let regular = cone.triangulate_regular(seed).unwrap();
            assert_eq!(regular.total_volume(), placing.total_volume());
            let a1 = cone.adjoint_from(&placing, &cone.vertex_rays()).unwrap();
            let a2 = cone.adjoint_from(&regular, &cone.vertex_rays()).unwrap();
            assert_eq!(a1, a2);
        }
    }

    #[test]
    fn lower_dimensional_rejected() {
        let flat = Cone::from_rays(vec![
            Ray::from_i64(&[1, 0, 0]),
            Ray::from_i64(&[0, 1, 0]),
        ])
        .unwrap();
        assert!(matches!(
            flat.triangulate(),
            Err(Error::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn transform_law_fixed_matrices() {
        let cone = square_cone();
        assert!(cone
            .adjoint_transform_check(&RationalMatrix::identity(3))
            .unwrap());
        // permutation
        let p = RationalMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(cone.adjoint_transform_check(&p).unwrap());
        let a = RationalMatrix::from_i64(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 3]]);
        assert!(cone.adjoint_transform_check(&a).unwrap());
        let singular = RationalMatrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(cone.transform(&singular).is_err());
    }

    #[test]
    fn vertex_scaling_covariance() {
        let cone = square_cone();
        let base = cone.adjoint().unwrap();
        let mut reps = cone.vertex_rays();
        let lambda = rat(5, 3);
        reps[2] = reps[2].scale(&lambda).unwrap();
        let scaled = cone.adjoint_with_reps(&reps).unwrap();
        assert_eq!(scaled, base.scale(&lambda));
    }

    #[test]
    fn orthantal_reduction_cases() {
        // already in the orthant: identity simplex
        let cone = Cone::from_rays(vec![
            Ray::from_i64(&[1, 1, 0]),
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
        ])
        .unwrap();
        let simplex = vec![
            Ray::from_i64(&[1, 0, 0]),
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
        ];
        let (reduced, a) = cone.orthantal_reduce(&simplex).unwrap();
        assert_eq!(a, RationalMatrix::identity(3));
        assert_eq!(reduced.adjoint().unwrap(), cone.adjoint().unwrap());

        // scaled coordinate simplex
        let doubled = vec![
            Ray::from_i64(&[2, 0, 0]),
            Ray::from_i64(&[0, 2, 0]),
            Ray::from_i64(&[0, 0, 2]),
        ];
        let (reduced2, a2) = cone.orthantal_reduce(&doubled).unwrap();
        assert_eq!(a2, RationalMatrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]));
        for (r, s) in reduced2.vertex_rays().iter().zip(cone.vertex_rays()) {
            assert!(r.equivalent(&s));
        }

        // genuine reduction: cone inside the simplex <(1,1,0),(0,1,0),(0,0,1)>
        // sharing the face spanned by the last two rays
        let inner = Cone::from_rays(vec![
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
            Ray::from_i64(&[1, 2, 1]),
        ])
        .unwrap();
        let enclosing = vec![
            Ray::from_i64(&[1, 1, 0]),
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
        ];
        let (reduced3, a3) = inner.orthantal_reduce(&enclosing).unwrap();
        for v in reduced3.vertex_rays() {
            assert!(v.coords().iter().all(|c| !c.is_negative()));
        }
        assert!(reduced3
            .vertex_rays()
            .iter()
            .any(|v| v.equivalent(&Ray::from_i64(&[0, 1, 0]))));
        assert!(reduced3
            .vertex_rays()
            .iter()
            .any(|v| v.equivalent(&Ray::from_i64(&[0, 0, 1]))));
        // adjoint of the original is recoverable through the transform law
        assert!(reduced3.adjoint_transform_check(&a3).unwrap());

        // violated containment
        let stray = Cone::from_rays(vec![
            Ray::from_i64(&[0, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
            Ray::from_i64(&[-1, 1, 1]),
        ])
        .unwrap();
        assert!(stray.orthantal_reduce(&enclosing).is_err());
        // violated face condition
        let off_face = Cone::from_rays(vec![
            Ray::from_i64(&[1, 1, 0]),
            Ray::from_i64(&[0, 0, 1]),
            Ray::from_i64(&[1, 2, 1]),
        ])
        .unwrap();
        assert!(off_face.orthantal_reduce(&enclosing).is_err());
    }

    #[test]
    fn monte_carlo_membership_spot_check() {
        use rand::Rng;
        use rand::SeedableRng;
        let cone = square_cone();
        let t = cone.triangulate().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            // random nonnegative combination of generators lies in the cone
            let mut x = vec![Rat::zero(); 3];
            for g in cone.generators() {
                let c = rat_int(rng.gen_range(0i64..5));
                for (xi, gi) in x.iter_mut().zip(g.coords()) {
                    *xi += gi * &c;
                }
            }
            if x.iter().all(Rat::is_zero) {
                continue;
            }
            let mut weak = 0;
            let mut strict = 0;
            for piece in &t.pieces {
                let m = RationalMatrix::from_rows(
                    piece.rays.iter().map(|r| r.coords().to_vec()).collect(),
                )
                .transpose();
                let lambda = m.inverse().unwrap().mul_vec(&x).unwrap();
                if lambda.iter().all(|l| !l.is_negative()) {
                    weak += 1;
                }
                if lambda.iter().all(|l| l.is_positive()) {
                    strict += 1;
                }
            }
            assert!(weak >= 1, "point escaped the triangulation");
            assert!(strict <= 1, "overlapping piece interiors");
        }
    }

    #[test]
    fn cone_json_round_trip() {
        let cone = square_cone();
        let s = serde_json::to_string(&cone).unwrap();
        let back: Cone = serde_json::from_str(&s).unwrap();
        assert_eq!(back.ambient_dim(), 3);
        assert_eq!(back.num_vertex_rays(), 4);
        assert_eq!(back.adjoint().unwrap(), cone.adjoint().unwrap());
    }
}
