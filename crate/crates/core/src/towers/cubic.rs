//! Generic arithmetic for one cubic extension step `T[x]/(x^3 - xi)`.
//!
//! The same formulas serve every cubic layer of the towers; what varies is
//! the subfield operation set, abstracted by [`Ops`]. Multiplication is the
//! 6-multiplication Karatsuba formula, squaring the 5-squaring interpolation
//! formula (with an alternative 6-squaring variant used where the cost
//! accounting of the k = 27 pairing path expects it), inversion the
//! norm-based formula at `I_sub + 9M_sub + 2S_sub`.

use crate::costs::CostLedger;
use crate::Result;

/// Operations of the subfield `T`, plus the residue `xi` of the cubic step
/// built on top of it. Additions and small-constant scalings are free.
pub(crate) trait Ops<T: Clone + PartialEq> {
    fn zero(&self) -> T;
    fn one(&self) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn neg(&self, a: &T) -> T;
    fn mul(&self, a: &T, b: &T, led: &mut CostLedger) -> T;
    fn square(&self, a: &T, led: &mut CostLedger) -> T;
    fn inv(&self, a: &T, led: &mut CostLedger) -> Result<T>;
    /// Multiply by the residue `xi` with `x^3 = xi`. A coefficient shuffle
    /// plus a small-constant multiplication; uncounted.
    fn mul_xi(&self, a: &T) -> T;
    /// Divide by the residue `xi` (inverse shuffle); uncounted.
    fn div_xi(&self, a: &T) -> T;
    fn mul_small(&self, a: &T, k: i64) -> T;
    fn div_small(&self, a: &T, k: u64) -> T;
    fn is_zero(&self, a: &T) -> bool;

    fn double(&self, a: &T) -> T {
        self.add(a, a)
    }
}

/// Karatsuba multiplication: six subfield multiplications.
pub(crate) fn mul_karatsuba<C, T>(c: &C, a: &[T; 3], b: &[T; 3], led: &mut CostLedger) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    let v0 = c.mul(&a[0], &b[0], led);
    let v1 = c.mul(&a[1], &b[1], led);
    let v2 = c.mul(&a[2], &b[2], led);
    let v3 = c.mul(&c.add(&a[0], &a[1]), &c.add(&b[0], &b[1]), led);
    let v4 = c.mul(&c.add(&a[1], &a[2]), &c.add(&b[1], &b[2]), led);
    let v5 = c.mul(&c.add(&a[0], &a[2]), &c.add(&b[0], &b[2]), led);
    // c0 = v0 + xi*(v4 - v1 - v2)
    let c0 = c.add(&v0, &c.mul_xi(&c.sub(&c.sub(&v4, &v1), &v2)));
    // c1 = v3 - v0 - v1 + xi*v2
    let c1 = c.add(&c.sub(&c.sub(&v3, &v0), &v1), &c.mul_xi(&v2));
    // c2 = v5 - v0 - v2 + v1
    let c2 = c.add(&c.sub(&c.sub(&v5, &v0), &v2), &v1);
    [c0, c1, c2]
}

/// Toom-3 multiplication: five subfield multiplications, evaluation at
/// {0, 1, -1, 2, inf} with uncounted divisions by 2 and 6.
pub(crate) fn mul_toom3<C, T>(c: &C, a: &[T; 3], b: &[T; 3], led: &mut CostLedger) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    let p0 = c.mul(&a[0], &b[0], led);
    let a_sum = c.add(&c.add(&a[0], &a[1]), &a[2]);
    let b_sum = c.add(&c.add(&b[0], &b[1]), &b[2]);
    let pp = c.mul(&a_sum, &b_sum, led);
    let a_alt = c.add(&c.sub(&a[0], &a[1]), &a[2]);
    let b_alt = c.add(&c.sub(&b[0], &b[1]), &b[2]);
    let pm = c.mul(&a_alt, &b_alt, led);
    let a2 = c.add(&c.add(&a[0], &c.mul_small(&a[1], 2)), &c.mul_small(&a[2], 4));
    let b2 = c.add(&c.add(&b[0], &c.mul_small(&b[1], 2)), &c.mul_small(&b[2], 4));
    let p2 = c.mul(&a2, &b2, led);
    let pi = c.mul(&a[2], &b[2], led);

    // Product coefficients c0..c4 of the degree-4 polynomial.
    let c0 = p0.clone();
    let c4 = pi.clone();
    let half_sum = c.div_small(&c.add(&pp, &pm), 2);
    let c2 = c.sub(&c.sub(&half_sum, &p0), &pi);
    let u = c.div_small(&c.sub(&pp, &pm), 2); // c1 + c3
    // c3 = (P2 - P0 - 4c2 - 16Pi - 2u)/6
    let mut t = c.sub(&p2, &p0);
    t = c.sub(&t, &c.mul_small(&c2, 4));
    t = c.sub(&t, &c.mul_small(&pi, 16));
    t = c.sub(&t, &c.mul_small(&u, 2));
    let c3 = c.div_small(&t, 6);
    let c1 = c.sub(&u, &c3);

    // Reduce by x^3 = xi.
    [c.add(&c0, &c.mul_xi(&c3)), c.add(&c1, &c.mul_xi(&c4)), c2]
}

/// Five-squaring formula.
///
/// With q1 = a0^2, q2 = a2^2, q3 = (a0+a1+a2)^2, q4 = (a0-a1+a2)^2,
/// q5 = (a0+2a1+4a2)^2, the product coefficients come out as rational
/// combinations with denominators 2 and 6, which are uncounted
/// interpolation constants:
///   c0 = q1 + xi*(3q1 - 12q2 - 3q3 - q4 + q5)/6
///   c1 = (-3q1 + 12q2 + 6q3 - 2q4 - q5)/6 + xi*q2
///   c2 = (q3 + q4)/2 - q1 - q2
pub(crate) fn square_5s<C, T>(c: &C, a: &[T; 3], led: &mut CostLedger) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    let q1 = c.square(&a[0], led);
    let q2 = c.square(&a[2], led);
    let q3 = c.square(&c.add(&c.add(&a[0], &a[1]), &a[2]), led);
    let q4 = c.square(&c.add(&c.sub(&a[0], &a[1]), &a[2]), led);
    let q5 = c.square(&c.add(&c.add(&a[0], &c.mul_small(&a[1], 2)), &c.mul_small(&a[2], 4)), led);

    let three_q1 = c.mul_small(&q1, 3);
    let twelve_q2 = c.mul_small(&q2, 12);

    // xi-part of c0
    let mut t0 = c.sub(&three_q1, &twelve_q2);
    t0 = c.sub(&t0, &c.mul_small(&q3, 3));
    t0 = c.sub(&t0, &q4);
    t0 = c.add(&t0, &q5);
    let c0 = c.add(&q1, &c.mul_xi(&c.div_small(&t0, 6)));

    let mut t1 = c.sub(&twelve_q2, &three_q1);
    t1 = c.add(&t1, &c.mul_small(&q3, 6));
    t1 = c.sub(&t1, &c.mul_small(&q4, 2));
    t1 = c.sub(&t1, &q5);
    let c1 = c.add(&c.div_small(&t1, 6), &c.mul_xi(&q2));

    let c2 = c.sub(&c.sub(&c.div_small(&c.add(&q3, &q4), 2), &q1), &q2);
    [c0, c1, c2]
}

/// Six-squaring variant (symmetric Karatsuba). Same value as
/// [`square_5s`], different ledger footprint; the k = 27 pairing path is
/// priced for this one.
pub(crate) fn square_6s<C, T>(c: &C, a: &[T; 3], led: &mut CostLedger) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    let v0 = c.square(&a[0], led);
    let v1 = c.square(&a[1], led);
    let v2 = c.square(&a[2], led);
    let v3 = c.square(&c.add(&a[0], &a[1]), led);
    let v4 = c.square(&c.add(&a[1], &a[2]), led);
    let v5 = c.square(&c.add(&a[0], &a[2]), led);
    let c0 = c.add(&v0, &c.mul_xi(&c.sub(&c.sub(&v4, &v1), &v2)));
    let c1 = c.add(&c.sub(&c.sub(&v3, &v0), &v1), &c.mul_xi(&v2));
    let c2 = c.add(&c.sub(&c.sub(&v5, &v0), &v2), &v1);
    [c0, c1, c2]
}

/// Norm-based inversion at `I_sub + 9M_sub + 2S_sub`.
///
/// A = a0^2 - xi*a1a2, B = xi*a2^2 - a0a1, C = a1^2 - a0a2 are the
/// coefficients of the product of the two conjugates of `a`; N = a0*A +
/// xi*(a2*B + a1*C) is the norm. B is recovered without a third squaring
/// from (a0+a2)(xi*a2 - a1) = xi*a2^2 - a0a1 + xi*a0a2 - a1a2.
pub(crate) fn inv_cubic<C, T>(c: &C, a: &[T; 3], led: &mut CostLedger) -> Result<[T; 3]>
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    let s0 = c.square(&a[0], led);
    let s1 = c.square(&a[1], led);
    let m_a1a2 = c.mul(&a[1], &a[2], led);
    let m_a0a2 = c.mul(&a[0], &a[2], led);
    let m_mix = c.mul(&c.add(&a[0], &a[2]), &c.sub(&c.mul_xi(&a[2]), &a[1]), led);

    let big_a = c.sub(&s0, &c.mul_xi(&m_a1a2));
    let big_c = c.sub(&s1, &m_a0a2);
    // B = m_mix - xi*a0a2 + a1a2
    let big_b = c.add(&c.sub(&m_mix, &c.mul_xi(&m_a0a2)), &m_a1a2);

    let n0 = c.mul(&a[0], &big_a, led);
    let n1 = c.mul(&a[2], &big_b, led);
    let n2 = c.mul(&a[1], &big_c, led);
    let norm = c.add(&n0, &c.mul_xi(&c.add(&n1, &n2)));
    let w = c.inv(&norm, led)?;
    Ok([c.mul(&big_a, &w, led), c.mul(&big_b, &w, led), c.mul(&big_c, &w, led)])
}

/// Which squaring formula a cyclotomic inversion uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycInvVariant {
    /// 3 subfield multiplications + 3 squarings (the cost-table row).
    MulBased,
    /// 6 subfield squarings; same value, squaring-only footprint.
    SquareBased,
}

use serde::{Deserialize, Serialize};

/// Product of the two nontrivial conjugates of `a` over the subfield:
/// exactly the inverse of a cyclotomic-subgroup element.
pub(crate) fn conjugate_product<C, T>(
    c: &C,
    a: &[T; 3],
    variant: CycInvVariant,
    led: &mut CostLedger,
) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    match variant {
        CycInvVariant::MulBased => {
            let s0 = c.square(&a[0], led);
            let s1 = c.square(&a[1], led);
            let s2 = c.square(&a[2], led);
            let m12 = c.mul(&a[1], &a[2], led);
            let m01 = c.mul(&a[0], &a[1], led);
            let m02 = c.mul(&a[0], &a[2], led);
            [
                c.sub(&s0, &c.mul_xi(&m12)),
                c.sub(&c.mul_xi(&s2), &m01),
                c.sub(&s1, &m02),
            ]
        }
        CycInvVariant::SquareBased => {
            let s0 = c.square(&a[0], led);
            let s1 = c.square(&a[1], led);
            let s2 = c.square(&a[2], led);
            let t01 = c.square(&c.add(&a[0], &a[1]), led);
            let t12 = c.square(&c.add(&a[1], &a[2]), led);
            let t02 = c.square(&c.add(&a[0], &a[2]), led);
            // 2*a_i*a_j = t_ij - s_i - s_j
            let m12 = c.div_small(&c.sub(&c.sub(&t12, &s1), &s2), 2);
            let m01 = c.div_small(&c.sub(&c.sub(&t01, &s0), &s1), 2);
            let m02 = c.div_small(&c.sub(&c.sub(&t02, &s0), &s2), 2);
            [
                c.sub(&s0, &c.mul_xi(&m12)),
                c.sub(&c.mul_xi(&s2), &m01),
                c.sub(&s1, &m02),
            ]
        }
    }
}

pub(crate) fn add3<C, T>(c: &C, a: &[T; 3], b: &[T; 3]) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    [c.add(&a[0], &b[0]), c.add(&a[1], &b[1]), c.add(&a[2], &b[2])]
}

pub(crate) fn sub3<C, T>(c: &C, a: &[T; 3], b: &[T; 3]) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    [c.sub(&a[0], &b[0]), c.sub(&a[1], &b[1]), c.sub(&a[2], &b[2])]
}

pub(crate) fn neg3<C, T>(c: &C, a: &[T; 3]) -> [T; 3]
where
    C: Ops<T>,
    T: Clone + PartialEq,
{
    [c.neg(&a[0]), c.neg(&a[1]), c.neg(&a[2])]
}
