//! Exact rational plane geometry.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Nearest multiple of `2^-bits` to a finite float.
pub fn from_f64_dyadic(x: f64, bits: u32) -> Q {
    let scale = (2.0f64).powi(bits as i32);
    let n = (x * scale).round();
    let num = BigInt::from(n as i128);
    Q::new(num, BigInt::one() << bits)
}

pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, t: &Q) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    /// `self + t (o - self)`.
    pub fn lerp(&self, o: &Point, t: &Q) -> Point {
        self.add(&o.sub(self).scale(t))
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        self.lerp(o, &qr(1, 2))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Twice the signed area of triangle `abc`; positive when counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Q {
    let ab = b.sub(a);
    let ac = c.sub(a);
    cross(&ab, &ac)
}

pub fn orient_sign(a: &Point, b: &Point, c: &Point) -> i32 {
    sign(&orient(a, b, c))
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient_sign(a, b, p) != 0 {
        return false;
    }
    let (lx, hx) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ly, hy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Intersection of lines `ab` and `cd`, if they are not parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let r = b.sub(a);
    let s = d.sub(c);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    let t = cross(&c.sub(a), &s) / den;
    Some(a.lerp(b, &t))
}

/// Where segment `ab` meets the horizontal line `y = y0` (requires `a.y != b.y`).
pub fn cross_horizontal(a: &Point, b: &Point, y0: &Q) -> Q {
    let t = (y0 - &a.y) / (&b.y - &a.y);
    &a.x + (&b.x - &a.x) * t
}

/// Signed doubled area of a closed polygon; positive when counter-clockwise.
pub fn signed_area2(pts: &[&Point]) -> Q {
    let k = pts.len();
    let mut s = Q::zero();
    for i in 0..k {
        s += cross(pts[i], pts[(i + 1) % k]);
    }
    s
}

/// A closed half-plane `{p : orient(a, b, p) >= 0}`, optionally open.
#[derive(Clone, Debug)]
pub struct HalfPlane {
    pub a: Point,
    pub b: Point,
}

impl HalfPlane {
    pub fn left_of(a: Point, b: Point) -> Self {
        HalfPlane { a, b }
    }

    pub fn value(&self, p: &Point) -> Q {
        orient(&self.a, &self.b, p)
    }
}

/// Clips a convex polygon (counter-clockwise) to a half-plane.
pub fn clip(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let k = poly.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let vals: Vec<Q> = poly.iter().map(|p| h.value(p)).collect();
    for i in 0..k {
        let j = (i + 1) % k;
        let (vi, vj) = (&vals[i], &vals[j]);
        if !vi.is_negative() {
            out.push(poly[i].clone());
        }
        if (vi.is_positive() && vj.is_negative()) || (vi.is_negative() && vj.is_positive()) {
            let t = vi / (vi - vj);
            out.push(poly[i].lerp(&poly[j], &t));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// True if `p` is strictly inside every half-plane.
pub fn strictly_inside(p: &Point, hs: &[HalfPlane]) -> bool {
    hs.iter().all(|h| h.value(p).is_positive())
}

/// A point with small numerators and power-of-two denominators strictly
/// inside the intersection of the half-planes, starting from a bounding
/// polygon. Returns `None` when the region has empty interior.
pub fn simple_interior_point(bound: &[Point], hs: &[HalfPlane]) -> Option<Point> {
    let mut poly = bound.to_vec();
    for h in hs {
        poly = clip(&poly, h);
        if poly.len() < 3 {
            return None;
        }
    }
    let k = Q::from_integer(BigInt::from(poly.len()));
    let mut c = Point::new(Q::zero(), Q::zero());
    for p in &poly {
        c = c.add(p);
    }
    let c = Point::new(&c.x / &k, &c.y / &k);
    if !strictly_inside(&c, hs) {
        return None;
    }
    for bits in 0..4096u32 {
        let r = round_point(&c, bits);
        if strictly_inside(&r, hs) {
            return Some(r);
        }
    }
    Some(c)
}

pub fn round_dyadic(x: &Q, bits: u32) -> Q {
    let den = BigInt::one() << bits;
    let scaled = x * Q::from_integer(den.clone());
    Q::new(scaled.round().to_integer(), den)
}

pub fn round_point(p: &Point, bits: u32) -> Point {
    Point::new(round_dyadic(&p.x, bits), round_dyadic(&p.y, bits))
}
