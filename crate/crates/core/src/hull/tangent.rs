//! Supporting points and tangents on upper hulls. Positions are 0-based.

use super::{HullError, UpperHullSeq};
use crate::geom::{doubling_search, orient, Point, ProbeCounter, SearchFrom, Slope};

/// Vertex of `pts` maximizing `y - slope * x`. On ties (an edge of exactly
/// that slope) the left endpoint, or the right one when `rightmost`.
pub(crate) fn support(pts: &[Point], slope: Slope, rightmost: bool, counter: &mut ProbeCounter) -> usize {
    debug_assert!(!pts.is_empty());
    doubling_search(0..pts.len() - 1, SearchFrom::Both, counter, |e, _| {
        let s = Slope::of(pts[e], pts[e + 1]);
        if rightmost {
            s < slope
        } else {
            s <= slope
        }
    })
}

/// Tangent vertex of `pts` (strictly right of `p`): every vertex lies on or
/// below the line from `p`; the farthest touching vertex is returned.
pub(crate) fn tangent_right(p: Point, pts: &[Point], counter: &mut ProbeCounter) -> usize {
    debug_assert!(!pts.is_empty());
    doubling_search(0..pts.len() - 1, SearchFrom::Both, counter, |i, _| orient(p, pts[i], pts[i + 1]) < 0)
}

/// Tangent vertex of `pts` (strictly left of `p`), farthest touching vertex.
pub(crate) fn tangent_left(p: Point, pts: &[Point], counter: &mut ProbeCounter) -> usize {
    debug_assert!(!pts.is_empty());
    // Last i whose left neighbour is strictly below the line from p through pts[i].
    let n = pts.len();
    let r = doubling_search(0..n - 1, SearchFrom::Both, counter, |k, _| {
        let i = n - 1 - k;
        orient(p, pts[i], pts[i - 1]) > 0
    });
    n - 1 - r
}

/// Position of the vertex of `u` on the supporting line of the given slope
/// (leftmost vertex on ties).
pub fn supporting_point(u: &UpperHullSeq, slope: Slope, counter: &mut ProbeCounter) -> Result<usize, HullError> {
    if u.is_empty() {
        return Err(HullError::EmptyHull);
    }
    Ok(support(u.points(), slope, false, counter))
}

/// Which side of the query point the hull lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Position of the vertex `q` of `u` such that all of `u` lies on or below
/// the line `p q`; the farthest such vertex from `p`.
pub fn tangents_from_point(
    p: Point,
    u: &UpperHullSeq,
    side: Side,
    counter: &mut ProbeCounter,
) -> Result<usize, HullError> {
    let pts = u.points();
    let (Some(first), Some(last)) = (pts.first(), pts.last()) else { return Err(HullError::EmptyHull) };
    match side {
        Side::Right if first.x > p.x => Ok(tangent_right(p, pts, counter)),
        Side::Left if last.x < p.x => Ok(tangent_left(p, pts, counter)),
        _ => Err(HullError::WrongSide),
    }
}

/// A separating line: `Vertical { x2 }` is the line `x = x2 / 2`; `Line(a, b)`
/// is the line through two distinct points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separator {
    Vertical { x2: i64 },
    Line(Point, Point),
}

impl Separator {
    fn side(&self, q: Point) -> i8 {
        match *self {
            Separator::Vertical { x2 } => (2 * q.x).cmp(&x2) as i8,
            Separator::Line(a, b) => {
                let (l, r) = if a < b { (a, b) } else { (b, a) };
                orient(l, r, q)
            }
        }
    }
}

fn strict_side(pts: &[Point], sep: &Separator) -> Option<i8> {
    let s = sep.side(*pts.first()?);
    (s != 0 && pts.iter().all(|&q| sep.side(q) == s)).then_some(s)
}

/// Upper common tangent of two upper hulls on opposite sides of `sep`:
/// positions `(i, j)` such that every vertex of both hulls lies on or below
/// the line `a[i] b[j]`. Touching ties resolve to the outermost vertices.
///
/// The separation check reads every vertex without charging the counter; the
/// search itself charges `O(log |a| + log |b|)` predicates. A non-vertical
/// separator is accepted when the hulls are also disjoint in x (a vertical
/// separator then exists and is used); otherwise there is no left-to-right
/// tangent and [`HullError::NoCommonTangent`] is returned.
pub fn tangent_between_hulls(
    a: &UpperHullSeq,
    b: &UpperHullSeq,
    sep: Separator,
    counter: &mut ProbeCounter,
) -> Result<(usize, usize), HullError> {
    let (pa, pb) = (a.points(), b.points());
    if pa.is_empty() || pb.is_empty() {
        return Err(HullError::EmptyHull);
    }
    if let Separator::Line(p, q) = sep {
        if p == q {
            return Err(HullError::NotSeparated);
        }
    }
    match (strict_side(pa, &sep), strict_side(pb, &sep)) {
        (Some(sa), Some(sb)) if sa != sb => {}
        _ => return Err(HullError::NotSeparated),
    }
    let (a_last, b_first) = (pa[pa.len() - 1].x, pb[0].x);
    let (b_last, a_first) = (pb[pb.len() - 1].x, pa[0].x);
    if a_last < b_first {
        Ok(bridge(pa, pb, a_last + b_first, counter))
    } else if b_last < a_first {
        let (j, i) = bridge(pb, pa, b_last + a_first, counter);
        Ok((i, j))
    } else {
        Err(HullError::NoCommonTangent)
    }
}

/// Intersection x of lines `(p1, p2)` and `(q1, q2)`, doubled, compared with `m2`.
fn cmp_intersection_x(p1: Point, p2: Point, q1: Point, q2: Point, m2: i64) -> core::cmp::Ordering {
    let (dx1, dy1) = ((p2.x - p1.x) as i128, (p2.y - p1.y) as i128);
    let (dx2, dy2) = ((q2.x - q1.x) as i128, (q2.y - q1.y) as i128);
    let (wx, wy) = ((q1.x - p1.x) as i128, (q1.y - p1.y) as i128);
    let mut den = dx1 * dy2 - dy1 * dx2;
    let mut num = wx * dy2 - wy * dx2;
    if den < 0 {
        den = -den;
        num = -num;
    }
    // x = p1.x + (num / den) * dx1
    let lhs = 2 * (p1.x as i128 * den + num * dx1);
    lhs.cmp(&(m2 as i128 * den))
}

/// Overmars–van Leeuwen bridge search for `a` entirely left of `x = m2 / 2`
/// and `b` entirely right of it.
fn bridge(a: &[Point], b: &[Point], m2: i64, counter: &mut ProbeCounter) -> (usize, usize) {
    let (mut alo, mut ahi) = (0usize, a.len() - 1);
    let (mut blo, mut bhi) = (0usize, b.len() - 1);
    loop {
        debug_assert!(alo <= ahi && blo <= bhi);
        let i = (alo + ahi) / 2;
        let j = (blo + bhi) / 2;
        let (p, q) = (a[i], b[j]);
        let a_left = i > 0 && counter.orient(p, q, a[i - 1]) >= 0;
        let b_right = j + 1 < b.len() && counter.orient(p, q, b[j + 1]) >= 0;
        if a_left || b_right {
            if a_left {
                ahi = i - 1;
            }
            if b_right {
                blo = j + 1;
            }
            continue;
        }
        let a_right = i + 1 < a.len() && counter.orient(p, q, a[i + 1]) > 0;
        let b_left = j > 0 && counter.orient(p, q, b[j - 1]) > 0;
        match (a_right, b_left) {
            (false, false) => return (i, j),
            (true, false) => alo = i + 1,
            (false, true) => bhi = j - 1,
            (true, true) => {
                counter.tick();
                if cmp_intersection_x(a[i], a[i + 1], b[j - 1], b[j], m2).is_le() {
                    alo = i + 1;
                } else {
                    bhi = j - 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn up(v: &[(i64, i64)]) -> UpperHullSeq {
        UpperHullSeq::new(v.iter().map(|&p| p.into()).collect::<Vec<Point>>()).unwrap()
    }

    #[test]
    fn supporting_point_examples() {
        let mut c = ProbeCounter::new();
        let u = up(&[(0, 0), (1, 3), (3, 2), (4, 0)]);
        assert_eq!(supporting_point(&u, Slope::new(0, 1), &mut c), Ok(1));
        assert_eq!(supporting_point(&u, Slope::new(-1, 1), &mut c), Ok(2));
        assert_eq!(supporting_point(&up(&[(5, 5)]), Slope::new(7, 3), &mut c), Ok(0));
        // an edge of exactly the slope: leftmost endpoint
        assert_eq!(supporting_point(&u, Slope::new(-1, 2), &mut c), Ok(1));
    }

    #[test]
    fn tangent_from_point_examples() {
        let mut c = ProbeCounter::new();
        // (2,1) lies below the line from (0,4) through (3,0), so (3,0) is the tangency vertex.
        let u = up(&[(2, 1), (3, 0)]);
        assert_eq!(tangents_from_point(Point::new(0, 4), &u, Side::Right, &mut c), Ok(1));
        assert_eq!(tangents_from_point(Point::new(-1, 0), &up(&[(2, 2)]), Side::Right, &mut c), Ok(0));
        let u = up(&[(1, 3), (3, 2)]);
        assert_eq!(tangents_from_point(Point::new(0, 0), &u, Side::Right, &mut c), Ok(0));
        assert_eq!(tangents_from_point(Point::new(5, 0), &u, Side::Left, &mut c), Ok(1));
        assert_eq!(tangents_from_point(Point::new(2, 0), &u, Side::Left, &mut c), Err(HullError::WrongSide));
        // collinear touch: the farther vertex
        let u = up(&[(1, 1), (2, 2), (3, 2)]);
        assert_eq!(tangents_from_point(Point::new(0, 0), &u, Side::Right, &mut c), Ok(1));
    }

    #[test]
    fn tangent_between_examples() {
        let mut c = ProbeCounter::new();
        let r = tangent_between_hulls(&up(&[(0, 0)]), &up(&[(2, 0)]), Separator::Vertical { x2: 2 }, &mut c);
        assert_eq!(r, Ok((0, 0)));
        let r = tangent_between_hulls(
            &up(&[(0, 0), (1, 1)]),
            &up(&[(2, 1), (3, 0)]),
            Separator::Vertical { x2: 3 },
            &mut c,
        );
        assert_eq!(r, Ok((1, 0)));
        let r = tangent_between_hulls(&up(&[(0, 0)]), &up(&[(2, 0)]), Separator::Vertical { x2: 6 }, &mut c);
        assert_eq!(r, Err(HullError::NotSeparated));
    }
}
