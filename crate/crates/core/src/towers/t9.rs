//! The cubic-cubic tower for embedding degree 9:
//! `F_p3 = F_p[u]/(u^3 - rho)`, `F_p9 = F_p3[v]/(v^3 - u)`.
//!
//! The Frobenius maps are monomial maps: `u^(p^i)` is a constant times `u`,
//! and `v^(p^i)` is a constant times `u^f v` where the shift `f` depends on
//! `p^i mod 9` (it is zero exactly when `p^i = 1 mod 9`). Each map therefore
//! permutes coefficient slots and multiplies by precomputed base-field
//! constants.

use num_bigint::BigUint;
use num_traits::One;

use super::cubic::{self, CycInvVariant, Ops};
use crate::costs::CostLedger;
use crate::fp::{Fp, PrimeField};
use crate::{Error, Result};

/// Element of `F_p3`, coefficients in the basis `{1, u, u^2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fp3(pub [Fp; 3]);

/// Element of `F_p9`, coefficients over `F_p3` in the basis `{1, v, v^2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fp9(pub [Fp3; 3]);

/// One Frobenius map as a coefficient permutation with constants.
/// Entry `[j][l]` moves input slot (v^j, u^l) to `(j, out_l)` scaled by `c`;
/// `counted` is false where the constant is structurally 1.
#[derive(Clone, Debug)]
pub(crate) struct MonomialMap9 {
    entries: [[(Fp, usize, bool); 3]; 3],
}

/// Precomputed Frobenius data for the degree-9 tower.
///
/// `alpha = rho^((p-1)/3)` is a primitive cube root of unity;
/// `mu = rho^((p^3-1)/9)` drives the p^3-Frobenius (`v^(p^3) = mu v`) and
/// doubles as the irreducibility witness for `v^3 - u`; `t = mu^2`.
#[derive(Clone, Debug)]
pub struct Frob9 {
    pub alpha: Fp,
    pub mu: Fp,
    pub t: Fp,
    maps: Vec<MonomialMap9>,
}

/// Context for `F_p9` and its subfield `F_p3`.
#[derive(Clone, Debug)]
pub struct Tower9 {
    pub fp: PrimeField,
    rho: u64,
    pub frob: Frob9,
}

impl Tower9 {
    /// Builds the tower over `u^3 = rho`, checking that `p = 1 mod 3`, that
    /// `rho` is a cubic non-residue, and that `u` is not a cube in `F_p3`.
    pub fn new(fp: PrimeField, rho: u64) -> Result<Self> {
        if fp.p_mod_3() != 1 {
            return Err(Error::ResidueClass("p = 1 mod 3 required for the cubic tower"));
        }
        let rho_el = fp.from_u64(rho);
        if !fp.is_cubic_nonresidue(&rho_el)? {
            return Err(Error::TowerConstruction("tower residue must be a cubic non-residue"));
        }
        let one = BigUint::one();
        let p = fp.modulus().clone();
        let p_minus_1 = &p - &one;
        let alpha = fp.pow_setup(&rho_el, &(&p_minus_1 / 3u32));
        // mu = rho^((p^3-1)/9) reduced mod p-1; p^3 = 1 mod 9 whenever
        // p = 1 mod 3, so the exponent is integral.
        let p3 = &p * &p * &p;
        let mu = fp.pow_setup(&rho_el, &(((&p3 - &one) / 9u32) % &p_minus_1));
        let t = fp.pow_setup(&mu, &BigUint::from(2u32));

        let cube = |a: &Fp| fp.pow_setup(a, &BigUint::from(3u32));
        if alpha.is_one() || !cube(&alpha).is_one() {
            return Err(Error::TowerConstruction("alpha must be a primitive cube root of unity"));
        }
        if mu.is_one() || !cube(&mu).is_one() {
            return Err(Error::TowerConstruction(
                "u must not be a cube in F_p3 (v^3 - u reducible)",
            ));
        }

        // Frobenius tables for i in 1..=8.
        let mut maps = Vec::with_capacity(9);
        maps.push(MonomialMap9 {
            entries: std::array::from_fn(|_| std::array::from_fn(|l| (fp.one(), l, false))),
        });
        let mut p_pow = BigUint::one();
        for i in 1..=8u32 {
            p_pow *= &p;
            // u^(p^i) = a_const * u
            let a_const = fp.pow_setup(&rho_el, &(((&p_pow - &one) / 3u32) % &p_minus_1));
            // v^(p^i) = c_const * u^f * v with f = ((p^i mod 9) - 1)/3
            let m = (&p_pow % 9u32).to_u32_digits().first().copied().unwrap_or(0);
            debug_assert!(m % 3 == 1);
            let f = ((m - 1) / 3) as usize;
            let c_const = fp.pow_setup(&rho_el, &(((&p_pow - m) / 9u32) % &p_minus_1));

            let a_pows = [fp.one(), a_const.clone(), {
                fp.from_biguint((a_const.value() * a_const.value()) % fp.modulus())
            }];
            let c_pows = [fp.one(), c_const.clone(), {
                fp.from_biguint((c_const.value() * c_const.value()) % fp.modulus())
            }];

            let block_fixed = i % 3 == 0; // p^i = 1 mod 9 and u fixed
            let entries: [[(Fp, usize, bool); 3]; 3] = std::array::from_fn(|j| {
                std::array::from_fn(|l| {
                    let total_u = l + f * j;
                    let out_l = total_u % 3;
                    let carry = total_u / 3;
                    let mut k = fp.from_biguint(
                        (a_pows[l].value() * c_pows[j].value()) % fp.modulus(),
                    );
                    if carry > 0 {
                        k = fp.from_biguint(
                            (k.value() * BigUint::from(rho).pow(carry as u32)) % fp.modulus(),
                        );
                    }
                    let counted = !((j == 0 && l == 0) || (block_fixed && j == 0));
                    (k, out_l, counted)
                })
            });
            maps.push(MonomialMap9 { entries });
        }

        Ok(Tower9 { fp, rho, frob: Frob9 { alpha, mu, t, maps } })
    }

    pub fn rho(&self) -> u64 {
        self.rho
    }

    // ---- F_p3 ----

    pub fn zero3(&self) -> Fp3 {
        Fp3(std::array::from_fn(|_| self.fp.zero()))
    }

    pub fn one3(&self) -> Fp3 {
        Fp3([self.fp.one(), self.fp.zero(), self.fp.zero()])
    }

    pub fn from_base3(&self, a: &Fp) -> Fp3 {
        Fp3([a.clone(), self.fp.zero(), self.fp.zero()])
    }

    pub fn is_zero3(&self, a: &Fp3) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    pub fn random3<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fp3 {
        Fp3(std::array::from_fn(|_| self.fp.random(rng)))
    }

    pub fn add3(&self, a: &Fp3, b: &Fp3) -> Fp3 {
        Fp3(cubic::add3(self, &a.0, &b.0))
    }

    pub fn sub3(&self, a: &Fp3, b: &Fp3) -> Fp3 {
        Fp3(cubic::sub3(self, &a.0, &b.0))
    }

    pub fn neg3(&self, a: &Fp3) -> Fp3 {
        Fp3(cubic::neg3(self, &a.0))
    }

    pub fn mul3(&self, a: &Fp3, b: &Fp3, led: &mut CostLedger) -> Fp3 {
        Fp3(cubic::mul_karatsuba(self, &a.0, &b.0, led))
    }

    pub fn sq3(&self, a: &Fp3, led: &mut CostLedger) -> Fp3 {
        Fp3(cubic::square_5s(self, &a.0, led))
    }

    pub fn inv3(&self, a: &Fp3, led: &mut CostLedger) -> Result<Fp3> {
        if self.is_zero3(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp3(cubic::inv_cubic(self, &a.0, led)?))
    }

    /// Multiply an `F_p3` element by `u` (free shuffle).
    pub fn mul_by_u(&self, a: &Fp3) -> Fp3 {
        Fp3([self.fp.mul_small(&a.0[2], self.rho), a.0[0].clone(), a.0[1].clone()])
    }

    /// Divide an `F_p3` element by `u` (free shuffle).
    pub fn div_by_u(&self, a: &Fp3) -> Fp3 {
        Fp3([a.0[1].clone(), a.0[2].clone(), self.fp.div_small(&a.0[0], self.rho)])
    }

    /// Scale by a base-field element: 3 M1.
    pub fn scale3(&self, a: &Fp3, s: &Fp, led: &mut CostLedger) -> Fp3 {
        Fp3(std::array::from_fn(|i| self.fp.mul(&a.0[i], s, led)))
    }

    // ---- F_p9 ----

    pub fn zero9(&self) -> Fp9 {
        Fp9(std::array::from_fn(|_| self.zero3()))
    }

    pub fn one9(&self) -> Fp9 {
        Fp9([self.one3(), self.zero3(), self.zero3()])
    }

    pub fn from_sub9(&self, a: &Fp3) -> Fp9 {
        Fp9([a.clone(), self.zero3(), self.zero3()])
    }

    pub fn is_zero9(&self, a: &Fp9) -> bool {
        a.0.iter().all(|c| self.is_zero3(c))
    }

    pub fn is_one9(&self, a: &Fp9) -> bool {
        *a == self.one9()
    }

    pub fn random9<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fp9 {
        Fp9(std::array::from_fn(|_| self.random3(rng)))
    }

    pub fn add9(&self, a: &Fp9, b: &Fp9) -> Fp9 {
        Fp9(cubic::add3(self, &a.0, &b.0))
    }

    pub fn sub9(&self, a: &Fp9, b: &Fp9) -> Fp9 {
        Fp9(cubic::sub3(self, &a.0, &b.0))
    }

    pub fn neg9(&self, a: &Fp9) -> Fp9 {
        Fp9(cubic::neg3(self, &a.0))
    }

    pub fn mul9(&self, a: &Fp9, b: &Fp9, led: &mut CostLedger) -> Fp9 {
        Fp9(cubic::mul_karatsuba(self, &a.0, &b.0, led))
    }

    pub fn sq9(&self, a: &Fp9, led: &mut CostLedger) -> Fp9 {
        Fp9(cubic::square_5s(self, &a.0, led))
    }

    pub fn inv9(&self, a: &Fp9, led: &mut CostLedger) -> Result<Fp9> {
        if self.is_zero9(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp9(cubic::inv_cubic(self, &a.0, led)?))
    }

    /// Multiply an `F_p9` element by `v` (free shuffle).
    pub fn mul9_by_v(&self, a: &Fp9) -> Fp9 {
        Fp9([self.mul_by_u(&a.0[2]), a.0[0].clone(), a.0[1].clone()])
    }

    /// Divide an `F_p9` element by `v` (free shuffle).
    pub fn div9_by_v(&self, a: &Fp9) -> Fp9 {
        Fp9([a.0[1].clone(), a.0[2].clone(), self.div_by_u(&a.0[0])])
    }

    /// `a^(p^i)` for i in 1..=8: 6 M1 for i in {3, 6}, 8 M1 otherwise.
    pub fn frobenius9(&self, a: &Fp9, i: u32, led: &mut CostLedger) -> Result<Fp9> {
        let i = (i % 9) as usize;
        if i == 0 {
            return Ok(a.clone());
        }
        let map = &self.frob.maps[i];
        let mut out = self.zero9();
        for j in 0..3usize {
            for l in 0..3usize {
                let (k, out_l, counted) = &map.entries[j][l];
                let v = if *counted {
                    self.fp.mul(&a.0[j].0[l], k, led)
                } else {
                    a.0[j].0[l].clone()
                };
                out.0[j].0[*out_l] = v;
            }
        }
        Ok(out)
    }

    /// True iff `a^(p^6 + p^3 + 1) = 1`.
    pub fn cyclotomic_test9(&self, a: &Fp9, led: &mut CostLedger) -> bool {
        let f3 = self.frobenius9(a, 3, led).expect("supported index");
        let f6 = self.frobenius9(a, 6, led).expect("supported index");
        let prod = self.mul9(&self.mul9(&f6, &f3, led), a, led);
        self.is_one9(&prod)
    }

    /// Fast inverse in the cyclotomic subgroup: `a^(p^6) * a^(p^3)`.
    /// Undefined value (no panic) outside the subgroup.
    pub fn cyc_inv9(&self, a: &Fp9, variant: CycInvVariant, led: &mut CostLedger) -> Fp9 {
        Fp9(cubic::conjugate_product(self, &a.0, variant, led))
    }

    /// Checked variant of [`Self::cyc_inv9`].
    pub fn cyc_inv9_checked(
        &self,
        a: &Fp9,
        variant: CycInvVariant,
        led: &mut CostLedger,
    ) -> Result<Fp9> {
        if !self.cyclotomic_test9(a, led) {
            return Err(Error::NotCyclotomic);
        }
        Ok(self.cyc_inv9(a, variant, led))
    }

    /// Left-to-right binary exponentiation: (bits-1) squarings and
    /// (weight-1) multiplications.
    pub fn pow9(&self, a: &Fp9, e: &BigUint, led: &mut CostLedger) -> Fp9 {
        if e.is_one() {
            return a.clone();
        }
        if e == &BigUint::from(0u32) {
            return self.one9();
        }
        let mut acc = a.clone();
        for i in (0..e.bits() - 1).rev() {
            acc = self.sq9(&acc, led);
            if e.bit(i) {
                acc = self.mul9(&acc, a, led);
            }
        }
        acc
    }

    /// Exponentiation with sign handling: negative exponents invert first,
    /// through the cyclotomic shortcut when the caller vouches for
    /// subgroup membership.
    pub fn pow9_signed(
        &self,
        a: &Fp9,
        e: &BigUint,
        negative: bool,
        cyclotomic: bool,
        led: &mut CostLedger,
    ) -> Result<Fp9> {
        let base = if negative {
            if cyclotomic {
                self.cyc_inv9(a, CycInvVariant::MulBased, led)
            } else {
                self.inv9(a, led)?
            }
        } else {
            a.clone()
        };
        Ok(self.pow9(&base, e, led))
    }

    // ---- serialization ----

    pub fn fp3_coeffs(&self, a: &Fp3) -> Vec<Fp> {
        a.0.to_vec()
    }

    pub fn fp9_coeffs(&self, a: &Fp9) -> Vec<Fp> {
        a.0.iter().flat_map(|c| c.0.iter().cloned()).collect()
    }

    pub fn fp9_from_coeffs(&self, cs: &[Fp]) -> Result<Fp9> {
        if cs.len() != 9 {
            return Err(Error::LevelMismatch);
        }
        Ok(Fp9(std::array::from_fn(|j| Fp3(std::array::from_fn(|l| cs[3 * j + l].clone())))))
    }
}

impl Ops<Fp> for Tower9 {
    fn zero(&self) -> Fp {
        self.fp.zero()
    }
    fn one(&self) -> Fp {
        self.fp.one()
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        self.fp.add(a, b)
    }
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        self.fp.sub(a, b)
    }
    fn neg(&self, a: &Fp) -> Fp {
        self.fp.neg(a)
    }
    fn mul(&self, a: &Fp, b: &Fp, led: &mut CostLedger) -> Fp {
        self.fp.mul(a, b, led)
    }
    fn square(&self, a: &Fp, led: &mut CostLedger) -> Fp {
        self.fp.square(a, led)
    }
    fn inv(&self, a: &Fp, led: &mut CostLedger) -> Result<Fp> {
        self.fp.inv(a, led)
    }
    fn mul_xi(&self, a: &Fp) -> Fp {
        self.fp.mul_small(a, self.rho)
    }
    fn div_xi(&self, a: &Fp) -> Fp {
        self.fp.div_small(a, self.rho)
    }
    fn mul_small(&self, a: &Fp, k: i64) -> Fp {
        self.fp.mul_small_signed(a, k)
    }
    fn div_small(&self, a: &Fp, k: u64) -> Fp {
        self.fp.div_small(a, k)
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.is_zero()
    }
}

impl Ops<Fp3> for Tower9 {
    fn zero(&self) -> Fp3 {
        self.zero3()
    }
    fn one(&self) -> Fp3 {
        self.one3()
    }
    fn add(&self, a: &Fp3, b: &Fp3) -> Fp3 {
        self.add3(a, b)
    }
    fn sub(&self, a: &Fp3, b: &Fp3) -> Fp3 {
        self.sub3(a, b)
    }
    fn neg(&self, a: &Fp3) -> Fp3 {
        self.neg3(a)
    }
    fn mul(&self, a: &Fp3, b: &Fp3, led: &mut CostLedger) -> Fp3 {
        self.mul3(a, b, led)
    }
    fn square(&self, a: &Fp3, led: &mut CostLedger) -> Fp3 {
        self.sq3(a, led)
    }
    fn inv(&self, a: &Fp3, led: &mut CostLedger) -> Result<Fp3> {
        self.inv3(a, led)
    }
    fn mul_xi(&self, a: &Fp3) -> Fp3 {
        self.mul_by_u(a)
    }
    fn div_xi(&self, a: &Fp3) -> Fp3 {
        self.div_by_u(a)
    }
    fn mul_small(&self, a: &Fp3, k: i64) -> Fp3 {
        Fp3(std::array::from_fn(|i| self.fp.mul_small_signed(&a.0[i], k)))
    }
    fn div_small(&self, a: &Fp3, k: u64) -> Fp3 {
        Fp3(std::array::from_fn(|i| self.fp.div_small(&a.0[i], k)))
    }
    fn is_zero(&self, a: &Fp3) -> bool {
        self.is_zero3(a)
    }
}
