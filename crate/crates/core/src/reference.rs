//! Independent brute-force oracles.
//!
//! These deliberately share no code with the fast arithmetic: multiplication
//! is plain convolution with schoolbook products at every level, inversion
//! and Frobenius maps go through integer exponentiation. None of them touch
//! the cost ledger. They exist so the test suite can anchor the optimized
//! paths, and they are orders of magnitude slower.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::fp::Fp;
use crate::towers::{Fp15, Fp27, Fp3, Fp5, Fp9, Tower15, Tower27, Tower9};

// ---- raw coefficient convolution ----

fn conv_fp(t: &crate::fp::PrimeField, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
    let mut out = vec![t.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let prod = Fp((ai.value() * bj.value()) % t.modulus());
            out[i + j] = t.add(&out[i + j], &prod);
        }
    }
    out
}

/// Schoolbook product in `F_p3`: convolution then reduction by `u^3 = 7`.
pub fn schoolbook_mul3(t: &Tower9, a: &Fp3, b: &Fp3) -> Fp3 {
    let mut c = conv_fp(&t.fp, &a.0, &b.0);
    for i in (3..c.len()).rev() {
        let lifted = t.fp.mul_small(&c[i], t.rho());
        c[i - 3] = t.fp.add(&c[i - 3], &lifted);
        c[i] = t.fp.zero();
    }
    Fp3([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Schoolbook product in `F_p5`: convolution then reduction by `u^5 = 7`.
pub fn schoolbook_mul5(t: &Tower15, a: &Fp5, b: &Fp5) -> Fp5 {
    let mut c = conv_fp(&t.fp, &a.0, &b.0);
    for i in (5..c.len()).rev() {
        let lifted = t.fp.mul_small(&c[i], t.rho());
        c[i - 5] = t.fp.add(&c[i - 5], &lifted);
        c[i] = t.fp.zero();
    }
    Fp5([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone()])
}

/// Schoolbook product in `F_p9`: convolution over `F_p3` (each product by
/// [`schoolbook_mul3`]) then reduction by `v^3 = u`.
pub fn schoolbook_mul9(t: &Tower9, a: &Fp9, b: &Fp9) -> Fp9 {
    let mut c: Vec<Fp3> = vec![t.zero3(); 5];
    for i in 0..3 {
        for j in 0..3 {
            let prod = schoolbook_mul3(t, &a.0[i], &b.0[j]);
            c[i + j] = t.add3(&c[i + j], &prod);
        }
    }
    for i in (3..5).rev() {
        let lifted = t.mul_by_u(&c[i]);
        c[i - 3] = t.add3(&c[i - 3], &lifted);
    }
    Fp9([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Schoolbook product in `F_p15`: convolution over `F_p5`, reduce `v^3 = u`.
pub fn schoolbook_mul15(t: &Tower15, a: &Fp15, b: &Fp15) -> Fp15 {
    let mut c: Vec<Fp5> = vec![t.zero5(); 5];
    for i in 0..3 {
        for j in 0..3 {
            let prod = schoolbook_mul5(t, &a.0[i], &b.0[j]);
            c[i + j] = t.add5(&c[i + j], &prod);
        }
    }
    for i in (3..5).rev() {
        let lifted = t.mul_by_u(&c[i]);
        c[i - 3] = t.add5(&c[i - 3], &lifted);
    }
    Fp15([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Schoolbook product in `F_p27`: convolution over `F_p9`, reduce `w^3 = v`.
pub fn schoolbook_mul27(t: &Tower27, a: &Fp27, b: &Fp27) -> Fp27 {
    let mut c: Vec<Fp9> = vec![t.t9.zero9(); 5];
    for i in 0..3 {
        for j in 0..3 {
            let prod = schoolbook_mul9(&t.t9, &a.0[i], &b.0[j]);
            c[i + j] = t.t9.add9(&c[i + j], &prod);
        }
    }
    for i in (3..5).rev() {
        let lifted = t.t9.mul9_by_v(&c[i]);
        c[i - 3] = t.t9.add9(&c[i - 3], &lifted);
    }
    Fp27([c[0].clone(), c[1].clone(), c[2].clone()])
}

// ---- integer exponentiation over the schoolbook products ----

macro_rules! int_exp_impl {
    ($name:ident, $tower:ty, $elem:ty, $one:ident, $mul:ident) => {
        /// Plain binary exponentiation built on the schoolbook product.
        pub fn $name(t: &$tower, a: &$elem, e: &BigUint) -> $elem {
            if e.is_zero() {
                return t.$one();
            }
            let mut acc = a.clone();
            for i in (0..e.bits() - 1).rev() {
                acc = $mul(t, &acc, &acc);
                if e.bit(i) {
                    acc = $mul(t, &acc, a);
                }
            }
            acc
        }
    };
}

int_exp_impl!(int_exp3, Tower9, Fp3, one3, schoolbook_mul3);
int_exp_impl!(int_exp5, Tower15, Fp5, one5, schoolbook_mul5);
int_exp_impl!(int_exp9a, Tower9, Fp9, one9, schoolbook_mul9);
int_exp_impl!(int_exp15a, Tower15, Fp15, one15, schoolbook_mul15);

pub fn int_exp9(t: &Tower9, a: &Fp9, e: &BigUint) -> Fp9 {
    int_exp9a(t, a, e)
}

pub fn int_exp15(t: &Tower15, a: &Fp15, e: &BigUint) -> Fp15 {
    int_exp15a(t, a, e)
}

pub fn int_exp27(t: &Tower27, a: &Fp27, e: &BigUint) -> Fp27 {
    if e.is_zero() {
        return t.one27();
    }
    let mut acc = a.clone();
    for i in (0..e.bits() - 1).rev() {
        acc = schoolbook_mul27(t, &acc, &acc);
        if e.bit(i) {
            acc = schoolbook_mul27(t, &acc, a);
        }
    }
    acc
}

// ---- naive Frobenius: a^(p^i) by exponentiation ----

pub fn naive_frobenius9(t: &Tower9, a: &Fp9, i: u32) -> Fp9 {
    int_exp9(t, a, &t.fp.modulus().pow(i))
}

pub fn naive_frobenius15(t: &Tower15, a: &Fp15, i: u32) -> Fp15 {
    int_exp15(t, a, &t.fp.modulus().pow(i))
}

pub fn naive_frobenius27(t: &Tower27, a: &Fp27, i: u32) -> Fp27 {
    int_exp27(t, a, &t.fp().modulus().pow(i))
}
