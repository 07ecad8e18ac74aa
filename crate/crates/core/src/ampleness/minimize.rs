//! Exact minimization of a positive form over the integer points of a
//! pointed polyhedral cone.
//!
//! The feasible set is given by strict inequalities `row . y > 0`, which for
//! integer points is the same as `row . y >= 1`. The objective must be
//! homogeneous; when its expansion in the extremal-ray coordinates of the
//! cone has only nonnegative coefficients, a finite search box containing
//! every point at or below the incumbent value can be read off from the ray
//! values, and the box shrinks as better incumbents are found. The scan is
//! exhaustive inside the box, so the reported minimum is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::chain::Frame;
use crate::exact::{nth_root_upper_bound, MultiPoly, Rat};
use crate::nefcone::extremal_rays_of;
use crate::{Error, Result};

/// Hard cap on the number of lattice points a single scan may visit.
const MAX_SCAN_POINTS: u128 = 1 << 26;

/// Coordinates of scanned points must fit comfortably in i64.
const MAX_COORD: i64 = 1 << 40;

const MAX_PASSES: u32 = 64;

/// Result of an exhaustive cone minimization.
#[derive(Debug, Clone)]
pub struct MinimizeOutcome {
    /// The exact minimum value of the objective on the feasible set.
    pub minimum: Rat,
    /// The lexicographically smallest feasible point attaining the minimum.
    pub argmin: Vec<BigInt>,
    /// Extremal rays of the feasible cone, empty for a plain box scan.
    pub rays: Vec<Vec<BigInt>>,
    /// Objective values on the rays, in the same order.
    pub ray_values: Vec<Rat>,
    /// Bounds of the last box that was scanned, one (low, high) pair per
    /// coordinate.
    pub final_box: Vec<(BigInt, BigInt)>,
    /// Number of scan passes performed.
    pub passes: u32,
}

/// A cone minimization translated back to the original divisor coefficients.
#[derive(Debug, Clone)]
pub struct MinimumDegree {
    pub outcome: MinimizeOutcome,
    /// The minimizing class in the original coefficients.
    pub divisor: Vec<BigInt>,
    pub degree: BigInt,
    /// Human summary of the coordinate scaling used for the search.
    pub frame: String,
}

impl MinimizeOutcome {
    /// Translates a minimization in scaled coordinates back to the original
    /// divisor coefficients of the frame. The objective must have been
    /// integral on the scan grid, so the minimum is required to be an
    /// integer.
    pub fn into_minimum_degree(self, frame: &Frame) -> Result<MinimumDegree> {
        let divisor: Vec<BigInt> =
            frame.multipliers().iter().zip(&self.argmin).map(|(m, y)| m * y).collect();
        if !self.minimum.is_integer() {
            return Err(Error::internal(
                "the minimal degree of an integral form must be an integer",
            ));
        }
        let degree = self.minimum.numer().clone();
        Ok(MinimumDegree { outcome: self, divisor, degree, frame: frame.describe() })
    }
}

// The objective is cleared to integer terms once; all point evaluations then
// compare integer numerators over the fixed positive denominator.
struct Objective {
    den: BigInt,
    terms: Vec<(Vec<u32>, BigInt)>,
    terms_i128: Option<Vec<(Vec<u32>, i128)>>,
    max_exp: Vec<u32>,
}

impl Objective {
    fn new(f: &MultiPoly) -> Objective {
        let (den, terms) = f.cleared_integer_terms();
        let n = f.vars().len();
        let mut max_exp = vec![0u32; n];
        for (exps, _) in &terms {
            for (m, &e) in max_exp.iter_mut().zip(exps) {
                *m = (*m).max(e);
            }
        }
        let terms_i128 = terms
            .iter()
            .map(|(e, c)| c.to_i128().map(|v| (e.clone(), v)))
            .collect::<Option<Vec<_>>>();
        Objective { den, terms, terms_i128, max_exp }
    }

    fn eval_num_i128(&self, y: &[i64], pow_buf: &mut [Vec<i128>]) -> Option<i128> {
        let terms = self.terms_i128.as_ref()?;
        for (buf, &yi) in pow_buf.iter_mut().zip(y) {
            buf[0] = 1;
            for e in 1..buf.len() {
                buf[e] = buf[e - 1].checked_mul(yi as i128)?;
            }
        }
        let mut acc: i128 = 0;
        for (exps, c) in terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t.checked_mul(pow_buf[i][e as usize])?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn eval_num_big(&self, y: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= BigInt::from(y[i]).pow(e);
                }
            }
            acc += t;
        }
        acc
    }
}

struct Best {
    num: BigInt,
    point: Vec<i64>,
}

fn feasible(rows: &[Vec<i64>], y: &[i64]) -> bool {
    rows.iter().all(|row| {
        let s: i128 = row.iter().zip(y).map(|(&r, &v)| r as i128 * v as i128).sum();
        s >= 1
    })
}

fn box_point_count(lo: &[i64], hi: &[i64]) -> u128 {
    let mut total: u128 = 1;
    for (&l, &h) in lo.iter().zip(hi) {
        if h < l {
            return 0;
        }
        total = total.saturating_mul((h - l + 1) as u128);
    }
    total
}

// Visits every integer point of the box in lexicographic order and keeps the
// best strictly feasible one. Returns whether the incumbent improved, where
// an equal value at a lexicographically smaller point also counts.
fn scan_box(
    obj: &Objective,
    rows: &[Vec<i64>],
    lo: &[i64],
    hi: &[i64],
    best: &mut Option<Best>,
) -> Result<bool> {
    let total = box_point_count(lo, hi);
    if total == 0 {
        return Ok(false);
    }
    if total > MAX_SCAN_POINTS {
        return Err(Error::domain(format!(
            "the search box holds {total} integer points, more than the scan cap of {MAX_SCAN_POINTS}"
        )));
    }
    let n = lo.len();
    let mut pow_buf: Vec<Vec<i128>> =
        obj.max_exp.iter().map(|&e| vec![0i128; e as usize + 1]).collect();
    let mut y = lo.to_vec();
    let mut improved = false;
    'points: loop {
        if feasible(rows, &y) {
            let num = match obj.eval_num_i128(&y, &mut pow_buf) {
                Some(v) => BigInt::from(v),
                None => obj.eval_num_big(&y),
            };
            let better = match best {
                None => true,
                Some(b) => num < b.num || (num == b.num && y[..] < b.point[..]),
            };
            if better {
                *best = Some(Best { num, point: y.clone() });
                improved = true;
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'points;
            }
            i -= 1;
            if y[i] < hi[i] {
                y[i] += 1;
                for (j, v) in y.iter_mut().enumerate().skip(i + 1) {
                    *v = lo[j];
                }
                continue 'points;
            }
        }
    }
    Ok(improved)
}

fn rows_to_i64(strict_rows: &[Vec<BigInt>], n: usize) -> Result<Vec<Vec<i64>>> {
    if strict_rows.is_empty() {
        return Err(Error::domain("at least one strict inequality is required"));
    }
    strict_rows
        .iter()
        .map(|row| {
            if row.len() != n {
                return Err(Error::domain(format!(
                    "inequality row has {} entries, the objective has {n} variables",
                    row.len()
                )));
            }
            row.iter()
                .map(|v| {
                    v.to_i64()
                        .filter(|x| x.abs() <= MAX_COORD)
                        .ok_or_else(|| Error::domain("inequality coefficients are too large"))
                })
                .collect()
        })
        .collect()
}

fn bound_to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .filter(|x| x.abs() <= MAX_COORD)
        .ok_or_else(|| Error::domain("search box bounds are too large"))
}

/// Minimizes a positive homogeneous form over the integer points `y` with
/// `row . y >= 1` for every given row.
///
/// The rows must cut out a pointed full-dimensional cone and the form must
/// have a nonnegative expansion in the cone's extremal-ray coordinates;
/// otherwise no finite search box can be derived here and the error suggests
/// [`minimize_with_box`] instead.
pub fn minimize_on_cone(
    f: &MultiPoly,
    strict_rows: &[Vec<BigInt>],
) -> Result<MinimizeOutcome> {
    let n = f.vars().len();
    let d = f
        .homogeneous_degree()
        .ok_or_else(|| Error::domain("cone minimization needs a homogeneous objective"))?;
    if d == 0 || f.is_zero() {
        return Err(Error::domain("the objective must be a nonconstant form"));
    }
    let rows_i64 = rows_to_i64(strict_rows, n)?;

    let dd = extremal_rays_of(strict_rows)?;
    if !dd.lineality.is_empty() {
        return Err(Error::domain(
            "the feasible cone contains a line, so sublevel sets are unbounded; \
             supply an explicit search box",
        ));
    }
    let rays = dd.rays;
    if rays.is_empty() {
        return Err(Error::domain("the feasible cone has no extremal ray"));
    }

    // The expansion of f in ray coordinates certifies the search box: with
    // nonnegative coefficients, f(sum c_j r_j) >= f(r_j) c_j^d for each j.
    let r = rays.len();
    let zvars: Vec<String> = (0..r).map(|j| format!("z{j}")).collect();
    let matrix: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..r).map(|j| Rat::from(rays[j][i].clone())).collect())
        .collect();
    let in_ray_coords = f.substitute_linear(zvars, &matrix)?;
    if in_ray_coords.terms().any(|(_, c)| c.is_negative()) {
        return Err(Error::domain(
            "the objective has mixed signs in the ray coordinates of the cone; \
             supply an explicit search box",
        ));
    }
    let ray_values: Vec<Rat> = rays
        .iter()
        .map(|ray| {
            let point: Vec<Rat> = ray.iter().map(|v| Rat::from(v.clone())).collect();
            f.eval(&point)
        })
        .collect::<Result<_>>()?;
    if ray_values.iter().any(|v| !v.is_positive()) {
        return Err(Error::domain(
            "the objective vanishes on an extremal ray, so arbitrarily small \
             positive values exist and no minimum can be certified",
        ));
    }

    // Incumbent: the ray sum lies in the cone; double until strictly inside.
    let mut y0: Vec<i64> = vec![0; n];
    for ray in &rays {
        for (acc, v) in y0.iter_mut().zip(ray) {
            *acc = acc
                .checked_add(bound_to_i64(v)?)
                .ok_or_else(|| Error::domain("ray coordinates are too large"))?;
        }
    }
    let mut doublings = 0;
    while !feasible(&rows_i64, &y0) {
        for v in &mut y0 {
            *v = v
                .checked_mul(2)
                .ok_or_else(|| Error::internal("no strictly feasible seed point found"))?;
        }
        doublings += 1;
        if doublings > 62 {
            return Err(Error::internal("no strictly feasible seed point found"));
        }
    }

    let obj = Objective::new(f);
    let mut best = Some(Best { num: obj.eval_num_big(&y0), point: y0 });
    let mut final_box: Vec<(BigInt, BigInt)>;
    let mut passes = 0;
    loop {
        passes += 1;
        if passes > MAX_PASSES {
            return Err(Error::internal("cone minimization failed to stabilize"));
        }
        let incumbent = best.as_ref().expect("incumbent is set before the loop");
        let value = Rat::new(incumbent.num.clone(), obj.den.clone());
        let taus: Vec<Rat> =
            ray_values.iter().map(|fj| nth_root_upper_bound(&(&value / fj), d)).collect();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for i in 0..n {
            let mut lo_acc = Rat::zero();
            let mut hi_acc = Rat::zero();
            for (ray, tau) in rays.iter().zip(&taus) {
                let contrib = &Rat::from(ray[i].clone()) * tau;
                if contrib.is_negative() {
                    lo_acc += &contrib;
                } else {
                    hi_acc += &contrib;
                }
            }
            lo.push(bound_to_i64(&lo_acc.ceil())?);
            hi.push(bound_to_i64(&hi_acc.floor())?);
        }
        final_box = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| (BigInt::from(l), BigInt::from(h)))
            .collect();
        if !scan_box(&obj, &rows_i64, &lo, &hi, &mut best)? {
            break;
        }
    }

    let best = best.expect("incumbent survives the scan loop");
    Ok(MinimizeOutcome {
        minimum: Rat::new(best.num, obj.den),
        argmin: best.point.into_iter().map(BigInt::from).collect(),
        rays,
        ray_values,
        final_box,
        passes,
    })
}

/// Minimizes a polynomial over the integer points of an explicit box that
/// satisfy `row . y >= 1` for every given row.
///
/// This is the fallback when no ray-coordinate certificate exists. The
/// objective need not be homogeneous. Fails when no box point is feasible.
pub fn minimize_with_box(
    f: &MultiPoly,
    strict_rows: &[Vec<BigInt>],
    bounds: &[(BigInt, BigInt)],
) -> Result<MinimizeOutcome> {
    let n = f.vars().len();
    if bounds.len() != n {
        return Err(Error::domain(format!(
            "the box has {} coordinate ranges, the objective has {n} variables",
            bounds.len()
        )));
    }
    let rows_i64 = rows_to_i64(strict_rows, n)?;
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for (l, h) in bounds {
        lo.push(bound_to_i64(l)?);
        hi.push(bound_to_i64(h)?);
    }
    let obj = Objective::new(f);
    let mut best = None;
    scan_box(&obj, &rows_i64, &lo, &hi, &mut best)?;
    let best = best
        .ok_or_else(|| Error::domain("no integer point of the box satisfies the inequalities"))?;
    let den = if obj.den.is_one() { BigInt::one() } else { obj.den.clone() };
    Ok(MinimizeOutcome {
        minimum: Rat::new(best.num, den),
        argmin: best.point.into_iter().map(BigInt::from).collect(),
        rays: Vec::new(),
        ray_values: Vec::new(),
        final_box: bounds.to_vec(),
        passes: 1,
    })
}
