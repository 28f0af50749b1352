//! Newton polygons of the characteristic polynomial at the two places of
//! F_p(Z), and the invariants read off them.
//!
//! Writing χ(λ) = Σ_j c_j λ^j with c_j ∈ F_p[Z, Z^-1], the lower convex hull
//! of the points (j, v(c_j)) determines the valuations of the eigenvalues of
//! G at the place v. The growth rate `a` is the total positive rise of the
//! two hulls, and the period `varpi` is the lcm of the multiplicative orders
//! of the residual roots attached to slope-zero segments.

use num_integer::Integer;
use num_rational::Rational64;

use crate::algebra::{DensePoly, LaurentPoly};
use crate::automaton::Rule;
use crate::error::{Error, Result};
use crate::finitefield::ExtField;

/// A place of F_p(Z) at which coefficient valuations are measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    /// v = order of vanishing at Z = 0.
    AtZero,
    /// v = -deg_Z, the order of vanishing at Z = infinity.
    AtInfinity,
}

impl Place {
    fn valuation(self, c: &LaurentPoly) -> Option<i64> {
        match self {
            Place::AtZero => c.val(),
            Place::AtInfinity => c.deg().map(|d| -d),
        }
    }

    /// Coefficient of `c` at valuation level `h` (zero when v(c) > h).
    fn residue(self, c: &LaurentPoly, h: i64) -> u64 {
        match self {
            Place::AtZero => c.coeff(h),
            Place::AtInfinity => c.coeff(-h),
        }
    }
}

/// Lower convex hull of {(j, v(c_j))} after stripping zero roots of χ.
///
/// A segment of slope μ and horizontal length ℓ records ℓ eigenvalues of
/// valuation -μ; the stripped zero eigenvalues have valuation +infinity and
/// are counted separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub place: Place,
    /// (slope, length) per hull segment, slopes strictly increasing.
    pub segments: Vec<(Rational64, usize)>,
    /// Multiplicity of zero as a root of χ.
    pub zero_eigenvalue_count: usize,
    /// Hull vertices (j, v), from which `segments` is derived.
    pub(crate) vertices: Vec<(usize, i64)>,
}

impl NewtonPolygon {
    /// Number of eigenvalue valuations recorded, zero eigenvalues included.
    /// Always equals deg χ.
    pub fn eigenvalue_count(&self) -> usize {
        self.zero_eigenvalue_count + self.segments.iter().map(|&(_, l)| l).sum::<usize>()
    }

    /// Σ length · max(slope, 0), this place's contribution to the growth
    /// rate. An integer: positive-slope segments rise by whole amounts
    /// between lattice vertices.
    pub fn positive_rise(&self) -> u64 {
        self.vertices
            .windows(2)
            .map(|w| (w[1].1 - w[0].1).max(0) as u64)
            .sum()
    }
}

/// Builds the Newton polygon of a monic polynomial λ^r + c_{r-1} λ^{r-1} + …
/// given as the coefficient slice `chi` with `chi[j]` the coefficient of λ^j.
pub fn newton_polygon(chi: &[LaurentPoly], place: Place) -> Result<NewtonPolygon> {
    let r = chi
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("empty coefficient list".into()))?;
    if !chi[r].is_one() {
        return Err(Error::InvalidArgument(
            "characteristic polynomial must be monic".into(),
        ));
    }
    let strip = chi
        .iter()
        .position(|c| !c.is_zero())
        .expect("a monic polynomial has a nonzero coefficient");
    let points: Vec<(usize, i64)> = chi[strip..]
        .iter()
        .enumerate()
        .filter_map(|(j, c)| place.valuation(c).map(|v| (j, v)))
        .collect();

    let mut vertices: Vec<(usize, i64)> = Vec::new();
    for &(x, y) in &points {
        while vertices.len() >= 2 {
            let (x1, y1) = vertices[vertices.len() - 2];
            let (x2, y2) = vertices[vertices.len() - 1];
            // Pop x2 when it lies on or above the segment x1 -> (x, y);
            // collinear points merge so slopes stay strictly increasing.
            let cross = (x2 - x1) as i64 * (y - y1) - (y2 - y1) * (x - x1) as i64;
            if cross <= 0 {
                vertices.pop();
            } else {
                break;
            }
        }
        vertices.push((x, y));
    }

    let segments = vertices
        .windows(2)
        .map(|w| {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            (Rational64::new(y2 - y1, (x2 - x1) as i64), x2 - x1)
        })
        .collect();
    Ok(NewtonPolygon {
        place,
        segments,
        zero_eigenvalue_count: strip,
        vertices,
    })
}

/// Growth rate of the fixed-point counts: log_p #Fix(g^n) grows like n·a.
///
/// Reads both Newton polygons of χ and totals the positive rises, which is
/// the same as summing max(-v(λ_i), 0) over all eigenvalues and both places.
pub fn compute_a(rule: &Rule) -> u64 {
    let chi = rule.matrix().char_poly();
    [Place::AtZero, Place::AtInfinity]
        .into_iter()
        .map(|place| {
            newton_polygon(&chi, place)
                .expect("char_poly is monic")
                .positive_rise()
        })
        .sum()
}

/// Degrees and multiplicative orders of the residual roots at one place.
///
/// The slope-zero segment of the Newton polygon (if any) carries the unit
/// eigenvalues. Reducing its coefficients to the residue field gives a
/// polynomial over F_p; each irreducible factor of degree k contributes one
/// (k, order of its roots in F_{p^k}^*) entry per occurrence. Eigenvalues of
/// nonzero valuation never become roots of unity and are not listed.
pub fn residual_data(rule: &Rule, place: Place) -> Vec<(usize, u64)> {
    let chi = rule.matrix().char_poly();
    let polygon = newton_polygon(&chi, place).expect("char_poly is monic");
    let strip = polygon.zero_eigenvalue_count;
    let mut out = Vec::new();
    for w in polygon.vertices.windows(2) {
        let ((j0, h0), (j1, h1)) = (w[0], w[1]);
        if h0 != h1 {
            continue;
        }
        let coeffs: Vec<u64> = (j0..=j1)
            .map(|j| place.residue(&chi[strip + j], h0))
            .collect();
        let residual = DensePoly::from_coeffs(rule.p(), coeffs);
        for (q, mult) in residual.make_monic().factor_monic() {
            let k = q.degree().expect("factors of a nonzero polynomial are nonzero");
            let field = ExtField::new(q).expect("irreducible factor defines a field");
            let order = field
                .gen()
                .multiplicative_order()
                .expect("residual roots are nonzero: segment endpoints sit on the hull");
            let order = u64::try_from(order).expect("residual root order fits in u64");
            for _ in 0..mult {
                out.push((k, order));
            }
        }
    }
    out
}

/// Period of the defect term: lcm of all residual root orders at both
/// places (1 when there are none). Coprime to p, since every order divides
/// some p^k - 1.
pub fn compute_varpi(rule: &Rule) -> u64 {
    let mut varpi = 1u64;
    for place in [Place::AtZero, Place::AtInfinity] {
        for (_, order) in residual_data(rule, place) {
            varpi = varpi.lcm(&order);
        }
    }
    assert!(varpi % rule.p() != 0, "defect period must be coprime to p");
    varpi
}
