//! Exact planar predicates over a generic exact scalar.
//!
//! Every predicate here is decided with ring operations only (no division),
//! so any exact ordered ring works as a coordinate type: machine integers
//! wide enough for the inputs, `BigInt`, or `BigRational`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Num, Signed};
use thiserror::Error;

/// Exact, totally ordered coordinate type.
///
/// Floating point types are deliberately excluded: they are not `Ord`.
pub trait Scalar: Clone + Ord + Num + Signed + fmt::Debug {}

impl<T> Scalar for T where T: Clone + Ord + Num + Signed + fmt::Debug {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// Converts coordinates into another scalar type.
    pub fn cast<U: From<T>>(self) -> Point<U> {
        Point::new(U::from(self.x), U::from(self.y))
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed straight segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment<T> {
    a: Point<T>,
    b: Point<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("segment endpoints coincide at {0}")]
    DegenerateSegment(String),
    #[error("segments touch or overlap without crossing properly: {0} and {1}")]
    Degeneracy(String, String),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
}

impl<T: Scalar> Segment<T> {
    pub fn new(a: Point<T>, b: Point<T>) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment(format!("{:?}", a)));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point<T> {
        &self.a
    }

    pub fn b(&self) -> &Point<T> {
        &self.b
    }

    fn shares_endpoint(&self, other: &Segment<T>) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }

    /// Intersection point of the supporting lines in homogeneous form, for
    /// segments that properly cross.
    fn crossing_point(&self, other: &Segment<T>) -> HomogeneousPoint<T> {
        let r = (
            self.b.x.clone() - self.a.x.clone(),
            self.b.y.clone() - self.a.y.clone(),
        );
        let s = (
            other.b.x.clone() - other.a.x.clone(),
            other.b.y.clone() - other.a.y.clone(),
        );
        let denom = r.0.clone() * s.1.clone() - r.1.clone() * s.0.clone();
        let qp = (
            other.a.x.clone() - self.a.x.clone(),
            other.a.y.clone() - self.a.y.clone(),
        );
        // a + r * t with t = (qp x s) / denom
        let t_num = qp.0 * s.1 - qp.1 * s.0;
        HomogeneousPoint {
            x: self.a.x.clone() * denom.clone() + r.0 * t_num.clone(),
            y: self.a.y.clone() * denom.clone() + r.1 * t_num,
            w: denom,
        }
    }
}

/// `(x / w, y / w)` with `w != 0`.
#[derive(Clone, Debug)]
struct HomogeneousPoint<T> {
    x: T,
    y: T,
    w: T,
}

impl<T: Scalar> PartialEq for HomogeneousPoint<T> {
    fn eq(&self, other: &Self) -> bool {
        self.x.clone() * other.w.clone() == other.x.clone() * self.w.clone()
            && self.y.clone() * other.w.clone() == other.y.clone() * self.w.clone()
    }
}

/// Sign of the signed area of triangle `pqr`: +1 counterclockwise, -1
/// clockwise, 0 collinear.
pub fn orientation<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> i8 {
    let det = (q.x.clone() - p.x.clone()) * (r.y.clone() - p.y.clone())
        - (q.y.clone() - p.y.clone()) * (r.x.clone() - p.x.clone());
    match det.cmp(&T::zero()) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// `r` lies on the closed segment `pq`, given that `p`, `q`, `r` are collinear.
fn within_box<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> bool {
    let (xl, xh) = if p.x <= q.x {
        (&p.x, &q.x)
    } else {
        (&q.x, &p.x)
    };
    let (yl, yh) = if p.y <= q.y {
        (&p.y, &q.y)
    } else {
        (&q.y, &p.y)
    };
    xl <= &r.x && &r.x <= xh && yl <= &r.y && &r.y <= yh
}

/// True iff the open interiors of `s` and `t` meet in exactly one point.
///
/// Segments sharing an endpoint never cross. Contact that is not a proper
/// crossing (an endpoint resting on the other segment, collinear overlap) is
/// reported as [`GeometryError::Degeneracy`].
pub fn segments_cross<T: Scalar>(s: &Segment<T>, t: &Segment<T>) -> Result<bool, GeometryError> {
    let degeneracy = || GeometryError::Degeneracy(format!("{:?}", s), format!("{:?}", t));
    if s.shares_endpoint(t) {
        let (shared, s_far, t_far) = if s.a == t.a {
            (&s.a, &s.b, &t.b)
        } else if s.a == t.b {
            (&s.a, &s.b, &t.a)
        } else if s.b == t.a {
            (&s.b, &s.a, &t.b)
        } else {
            (&s.b, &s.a, &t.a)
        };
        if s_far == t_far {
            return Err(degeneracy());
        }
        if orientation(shared, s_far, t_far) == 0
            && (within_box(shared, s_far, t_far) || within_box(shared, t_far, s_far))
        {
            return Err(degeneracy());
        }
        return Ok(false);
    }

    let o1 = orientation(&s.a, &s.b, &t.a);
    let o2 = orientation(&s.a, &s.b, &t.b);
    let o3 = orientation(&t.a, &t.b, &s.a);
    let o4 = orientation(&t.a, &t.b, &s.b);

    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(true);
    }
    let touching = (o1 == 0 && within_box(&s.a, &s.b, &t.a))
        || (o2 == 0 && within_box(&s.a, &s.b, &t.b))
        || (o3 == 0 && within_box(&t.a, &t.b, &s.a))
        || (o4 == 0 && within_box(&t.a, &t.b, &s.b));
    if touching {
        Err(degeneracy())
    } else {
        Ok(false)
    }
}

/// One way a drawing fails general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositionViolation {
    /// Three vertices on a common line (point indices, ascending).
    Collinear([usize; 3]),
    /// Three edges through a common interior point (edge indices, ascending).
    Concurrent([usize; 3]),
}

impl fmt::Display for PositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionViolation::Collinear([a, b, c]) => {
                write!(f, "points {a}, {b}, {c} are collinear")
            }
            PositionViolation::Concurrent([a, b, c]) => {
                write!(f, "edges {a}, {b}, {c} pass through a common point")
            }
        }
    }
}

/// Checks that no three points are collinear and no three edges pass through
/// a common interior point. Returns every violating triple.
pub fn validate_general_position<T: Scalar>(
    points: &[Point<T>],
    edges: &[(usize, usize)],
) -> Result<Vec<PositionViolation>, GeometryError> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(GeometryError::DuplicatePoint(i, j));
            }
        }
    }

    let mut violations = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if orientation(&points[i], &points[j], &points[k]) == 0 {
                    violations.push(PositionViolation::Collinear([i, j, k]));
                }
            }
        }
    }
    // Concurrency is only meaningful once no point sits on a foreign line.
    if !violations.is_empty() {
        return Ok(violations);
    }

    let segments: Vec<Segment<T>> = edges
        .iter()
        .map(|&(a, b)| Segment::new(points[a].clone(), points[b].clone()))
        .collect::<Result<_, _>>()?;
    let m = segments.len();
    let mut crosses = vec![false; m * m];
    for i in 0..m {
        for j in i + 1..m {
            let c = segments_cross(&segments[i], &segments[j])?;
            crosses[i * m + j] = c;
            crosses[j * m + i] = c;
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if !crosses[i * m + j] {
                continue;
            }
            let pij = segments[i].crossing_point(&segments[j]);
            for k in j + 1..m {
                if crosses[i * m + k]
                    && crosses[j * m + k]
                    && pij == segments[i].crossing_point(&segments[k])
                {
                    violations.push(PositionViolation::Concurrent([i, j, k]));
                }
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point<i64> {
        Point::new(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment<i64> {
        Segment::new(p(a.0, a.1), p(b.0, b.1)).unwrap()
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), 0);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn orientation_on_rationals() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let a = Point::new(r(0, 1), r(0, 1));
        let b = Point::new(r(1, 3), r(1, 3));
        let c = Point::new(r(2, 3), r(2, 3));
        assert_eq!(orientation(&a, &b, &c), 0);
        let c = Point::new(r(2, 3), r(2, 3) + r(1, 1_000_000_007));
        assert_eq!(orientation(&a, &b, &c), 1);
    }

    #[test]
    fn crossing_examples() {
        assert!(segments_cross(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))).unwrap());
        assert!(!segments_cross(&seg((0, 0), (1, 0)), &seg((0, 0), (0, 1))).unwrap());
        assert!(!segments_cross(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))).unwrap());
    }

    #[test]
    fn touching_is_degenerate() {
        // endpoint of t rests on the interior of s
        assert!(segments_cross(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 1))).is_err());
        // collinear overlap
        assert!(segments_cross(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))).is_err());
        // shared endpoint, folded back onto itself
        assert!(segments_cross(&seg((0, 0), (2, 0)), &seg((0, 0), (1, 0))).is_err());
        // collinear but disjoint is fine
        assert!(!segments_cross(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))).unwrap());
        assert!(Segment::new(p(1, 1), p(1, 1)).is_err());
    }

    #[test]
    fn general_position_examples() {
        let tri = [p(0, 0), p(1, 0), p(0, 1)];
        assert!(validate_general_position(&tri, &[(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .is_empty());

        let line = [p(0, 0), p(1, 1), p(2, 2)];
        assert_eq!(
            validate_general_position(&line, &[]).unwrap(),
            vec![PositionViolation::Collinear([0, 1, 2])]
        );

        let dup = [p(0, 0), p(0, 0), p(2, 1)];
        assert_eq!(
            validate_general_position(&dup, &[]),
            Err(GeometryError::DuplicatePoint(0, 1))
        );
    }

    #[test]
    fn three_edges_through_one_point() {
        // three diagonals of a hexagon-ish arrangement meeting at the origin
        let pts = [p(-2, -1), p(2, 1), p(-1, 2), p(1, -2), p(-3, 1), p(3, -1)];
        let edges = [(0, 1), (2, 3), (4, 5)];
        let v = validate_general_position(&pts, &edges).unwrap();
        assert_eq!(v, vec![PositionViolation::Concurrent([0, 1, 2])]);

        // nudge one edge off the common point
        let mut pts2 = pts;
        pts2[5] = p(3, -2);
        assert!(validate_general_position(&pts2, &edges).unwrap().is_empty());
    }

    #[test]
    fn pentagram_is_in_general_position() {
        // Brute force over all triples of points and all triples of edges.
        let pts: Vec<_> = (0..5).map(|i| p(i, i * i)).collect();
        let edges: Vec<_> = (0..5).map(|i| (i, (i + 2) % 5)).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    assert_ne!(orientation(&pts[i], &pts[j], &pts[k]), 0);
                }
            }
        }
        assert!(validate_general_position(&pts, &edges).unwrap().is_empty());
    }

    fn arb_point() -> impl Strategy<Value = Point<i64>> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(x, y)| p(x, y))
    }

    proptest! {
        #[test]
        fn crossing_is_symmetric(a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point()) {
            prop_assume!(a != b && c != d);
            let s = Segment::new(a, b).unwrap();
            let t = Segment::new(c, d).unwrap();
            prop_assert_eq!(segments_cross(&s, &t).ok(), segments_cross(&t, &s).ok());
        }

        #[test]
        fn crossing_is_affine_invariant(
            a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point(),
            dx in -500i64..500, dy in -500i64..500, k in 1i64..50,
        ) {
            prop_assume!(a != b && c != d);
            let moved = |q: &Point<i64>| p(q.x * k + dx, q.y * k + dy);
            let s = Segment::new(a.clone(), b.clone()).unwrap();
            let t = Segment::new(c.clone(), d.clone()).unwrap();
            let s2 = Segment::new(moved(&a), moved(&b)).unwrap();
            let t2 = Segment::new(moved(&c), moved(&d)).unwrap();
            prop_assert_eq!(segments_cross(&s, &t).ok(), segments_cross(&s2, &t2).ok());
        }

        // Of the three perfect matchings of four points in general position,
        // at most one crosses, and one does exactly when the points are in
        // convex position.
        #[test]
        fn four_points_matchings(a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point()) {
            let pts = [a, b, c, d];
            prop_assume!(validate_general_position(&pts, &[]).map(|v| v.is_empty()).unwrap_or(false));
            let cross = |i: usize, j: usize, k: usize, l: usize| {
                let s = Segment::new(pts[i].clone(), pts[j].clone()).unwrap();
                let t = Segment::new(pts[k].clone(), pts[l].clone()).unwrap();
                segments_cross(&s, &t).unwrap()
            };
            let count = [cross(0, 1, 2, 3), cross(0, 2, 1, 3), cross(0, 3, 1, 2)]
                .iter()
                .filter(|&&c| c)
                .count();
            // convex position: no point inside the triangle of the others
            let inside = |q: usize, i: usize, j: usize, k: usize| {
                let o1 = orientation(&pts[i], &pts[j], &pts[q]);
                let o2 = orientation(&pts[j], &pts[k], &pts[q]);
                let o3 = orientation(&pts[k], &pts[i], &pts[q]);
                o1 == o2 && o2 == o3
            };
            let convex = !(inside(0, 1, 2, 3) || inside(1, 0, 2, 3) || inside(2, 0, 1, 3) || inside(3, 0, 1, 2));
            prop_assert!(count <= 1);
            prop_assert_eq!(count == 1, convex);
        }
    }
}
