//! The degree-27 tower: `F_p27 = F_p9[w]/(w^3 - v)` on top of [`Tower9`].
//!
//! As in the degree-9 tower the Frobenius maps are monomial maps:
//! `w^(p^i)` is a base-field constant times `u^g v^h w`, so each map is a
//! slot permutation with 26, 24 or 18 counted constant multiplications.

use num_bigint::BigUint;
use num_traits::One;

use super::cubic::{self, CycInvVariant, Ops};
use super::t9::{Fp9, Tower9};
use crate::costs::CostLedger;
use crate::fp::{Fp, PrimeField};
use crate::{Error, Result};

/// Element of `F_p27`, coefficients over `F_p9` in the basis `{1, w, w^2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fp27(pub [Fp9; 3]);

/// Entry `[j][k][l]`: input slot (w^j, v^k, u^l) lands in
/// (j, out_k, out_l) scaled by the constant.
#[derive(Clone, Debug)]
struct MonomialMap27 {
    entries: Vec<(Fp, usize, usize, bool)>, // indexed j*9 + k*3 + l
}

/// Frobenius data for the degree-27 tower. `sigma = rho^((p^9-1)/27)`
/// drives the p^9-Frobenius (`w^(p^9) = sigma w`), is the irreducibility
/// witness for `w^3 - v`, and `s = sigma^2`.
#[derive(Clone, Debug)]
pub struct Frob27 {
    pub sigma: Fp,
    pub s: Fp,
    maps: Vec<Option<MonomialMap27>>,
}

#[derive(Clone, Debug)]
pub struct Tower27 {
    pub t9: Tower9,
    pub frob: Frob27,
}

/// Frobenius indices the degree-27 pairing needs.
pub const FROBENIUS_INDICES_27: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 18];

impl Tower27 {
    pub fn new(fp: PrimeField, rho: u64) -> Result<Self> {
        let t9 = Tower9::new(fp, rho)?;
        let fp = &t9.fp;
        let rho_el = fp.from_u64(rho);
        let one = BigUint::one();
        let p = fp.modulus().clone();
        let p_minus_1 = &p - &one;
        let mut p9 = BigUint::one();
        for _ in 0..9 {
            p9 *= &p;
        }
        // p^9 = 1 mod 27 whenever p = 1 mod 3.
        let sigma = fp.pow_setup(&rho_el, &(((&p9 - &one) / 27u32) % &p_minus_1));
        let s = fp.pow_setup(&sigma, &BigUint::from(2u32));
        if sigma.is_one() || !fp.pow_setup(&sigma, &BigUint::from(3u32)).is_one() {
            return Err(Error::TowerConstruction(
                "v must not be a cube in F_p9 (w^3 - v reducible)",
            ));
        }

        let mut maps: Vec<Option<MonomialMap27>> = vec![None; 19];
        let mut p_pow = BigUint::one();
        for i in 1..=18u32 {
            p_pow *= &p;
            if !FROBENIUS_INDICES_27.contains(&i) {
                continue;
            }
            // u^(p^i) = a * u;  v^(p^i) = c * u^f * v;  w^(p^i) = d * u^g v^h * w
            let a_const = fp.pow_setup(&rho_el, &(((&p_pow - &one) / 3u32) % &p_minus_1));
            let m9 = (&p_pow % 9u32).to_u32_digits().first().copied().unwrap_or(0);
            let f = ((m9 - 1) / 3) as usize;
            let c_const = fp.pow_setup(&rho_el, &(((&p_pow - m9) / 9u32) % &p_minus_1));
            let m27 = (&p_pow % 27u32).to_u32_digits().first().copied().unwrap_or(0);
            debug_assert!(m27 % 3 == 1);
            let big_g = ((m27 - 1) / 3) as usize; // w^(p^i) = d * v^G * w
            let g = big_g / 3;
            let h = big_g % 3;
            let d_const = fp.pow_setup(&rho_el, &(((&p_pow - m27) / 27u32) % &p_minus_1));

            let pw = |base: &Fp, e: usize| {
                fp.from_biguint(base.value().modpow(&BigUint::from(e), fp.modulus()))
            };
            let rho_big = BigUint::from(rho);

            let mut entries = Vec::with_capacity(27);
            for j in 0..3usize {
                for k in 0..3usize {
                    for l in 0..3usize {
                        // (u^l v^k w^j)^(p^i)
                        //   = a^l c^k d^j * u^(l + fk + gj) v^(k + hj) w^j
                        let mut vv = k + h * j;
                        let mut uu = l + f * k + g * j;
                        uu += vv / 3; // v^3 = u
                        vv %= 3;
                        let carry = uu / 3; // u^3 = rho
                        uu %= 3;
                        let mut kc = fp.from_biguint(
                            (pw(&a_const, l).value() * pw(&c_const, k).value()) % fp.modulus(),
                        );
                        kc = fp
                            .from_biguint((kc.value() * pw(&d_const, j).value()) % fp.modulus());
                        if carry > 0 {
                            kc = fp.from_biguint(
                                (kc.value() * rho_big.pow(carry as u32)) % fp.modulus(),
                            );
                        }
                        let counted = match i {
                            9 | 18 => j != 0,
                            3 | 6 => !(k == 0 && j == 0),
                            _ => !(j == 0 && k == 0 && l == 0),
                        };
                        entries.push((kc, uu, vv, counted));
                    }
                }
            }
            maps[i as usize] = Some(MonomialMap27 { entries });
        }

        Ok(Tower27 { t9, frob: Frob27 { sigma, s, maps } })
    }

    pub fn fp(&self) -> &PrimeField {
        &self.t9.fp
    }

    pub fn zero27(&self) -> Fp27 {
        Fp27(std::array::from_fn(|_| self.t9.zero9()))
    }

    pub fn one27(&self) -> Fp27 {
        Fp27([self.t9.one9(), self.t9.zero9(), self.t9.zero9()])
    }

    pub fn from_sub27(&self, a: &Fp9) -> Fp27 {
        Fp27([a.clone(), self.t9.zero9(), self.t9.zero9()])
    }

    pub fn is_zero27(&self, a: &Fp27) -> bool {
        a.0.iter().all(|c| self.t9.is_zero9(c))
    }

    pub fn is_one27(&self, a: &Fp27) -> bool {
        *a == self.one27()
    }

    pub fn random27<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fp27 {
        Fp27(std::array::from_fn(|_| self.t9.random9(rng)))
    }

    pub fn add27(&self, a: &Fp27, b: &Fp27) -> Fp27 {
        Fp27(cubic::add3(self, &a.0, &b.0))
    }

    pub fn sub27(&self, a: &Fp27, b: &Fp27) -> Fp27 {
        Fp27(cubic::sub3(self, &a.0, &b.0))
    }

    pub fn neg27(&self, a: &Fp27) -> Fp27 {
        Fp27(cubic::neg3(self, &a.0))
    }

    pub fn mul27(&self, a: &Fp27, b: &Fp27, led: &mut CostLedger) -> Fp27 {
        Fp27(cubic::mul_karatsuba(self, &a.0, &b.0, led))
    }

    /// Five-squaring route: 125 S1, the subfield cost-table row.
    pub fn sq27(&self, a: &Fp27, led: &mut CostLedger) -> Fp27 {
        Fp27(cubic::square_5s(self, &a.0, led))
    }

    /// Six-squaring route: 150 S1. The degree-27 pairing accounting prices
    /// its accumulator squarings this way.
    pub fn sq27_6s(&self, a: &Fp27, led: &mut CostLedger) -> Fp27 {
        Fp27(cubic::square_6s(self, &a.0, led))
    }

    pub fn inv27(&self, a: &Fp27, led: &mut CostLedger) -> Result<Fp27> {
        if self.is_zero27(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp27(cubic::inv_cubic(self, &a.0, led)?))
    }

    /// `a^(p^i)` for i in {1..9, 18}.
    ///
    /// Costs 18 M1 for i in {9, 18}. For i in {3, 6} the true cost is
    /// 24 M1: every coefficient outside `F_p3` picks up a constant, 8
    /// blocks of 3; the published table lists 18 M1 for these maps, which
    /// only covers the i = 9 structure. 26 M1 otherwise.
    pub fn frobenius27(&self, a: &Fp27, i: u32, led: &mut CostLedger) -> Result<Fp27> {
        let i = i % 27;
        if i == 0 {
            return Ok(a.clone());
        }
        let map = self.frob.maps[i as usize]
            .as_ref()
            .ok_or(Error::UnsupportedFrobenius(i))?;
        let fp = &self.t9.fp;
        let mut out = self.zero27();
        for j in 0..3usize {
            for k in 0..3usize {
                for l in 0..3usize {
                    let (kc, out_l, out_k, counted) = &map.entries[j * 9 + k * 3 + l];
                    let v = if *counted {
                        fp.mul(&a.0[j].0[k].0[l], kc, led)
                    } else {
                        a.0[j].0[k].0[l].clone()
                    };
                    out.0[j].0[*out_k].0[*out_l] = v;
                }
            }
        }
        Ok(out)
    }

    /// True iff `a^(p^18 + p^9 + 1) = 1`.
    pub fn cyclotomic_test27(&self, a: &Fp27, led: &mut CostLedger) -> bool {
        let f9 = self.frobenius27(a, 9, led).expect("supported index");
        let f18 = self.frobenius27(a, 18, led).expect("supported index");
        let prod = self.mul27(&self.mul27(&f18, &f9, led), a, led);
        self.is_one27(&prod)
    }

    /// Fast inverse in the cyclotomic subgroup: `a^(p^18) * a^(p^9)`.
    pub fn cyc_inv27(&self, a: &Fp27, variant: CycInvVariant, led: &mut CostLedger) -> Fp27 {
        Fp27(cubic::conjugate_product(self, &a.0, variant, led))
    }

    pub fn cyc_inv27_checked(
        &self,
        a: &Fp27,
        variant: CycInvVariant,
        led: &mut CostLedger,
    ) -> Result<Fp27> {
        if !self.cyclotomic_test27(a, led) {
            return Err(Error::NotCyclotomic);
        }
        Ok(self.cyc_inv27(a, variant, led))
    }

    /// Binary exponentiation with the 6-squaring accumulator squaring, the
    /// variant the pairing path is priced for.
    pub fn pow27(&self, a: &Fp27, e: &BigUint, led: &mut CostLedger) -> Fp27 {
        if e.is_one() {
            return a.clone();
        }
        if e == &BigUint::from(0u32) {
            return self.one27();
        }
        let mut acc = a.clone();
        for i in (0..e.bits() - 1).rev() {
            acc = self.sq27_6s(&acc, led);
            if e.bit(i) {
                acc = self.mul27(&acc, a, led);
            }
        }
        acc
    }

    pub fn fp27_coeffs(&self, a: &Fp27) -> Vec<Fp> {
        a.0.iter().flat_map(|c| self.t9.fp9_coeffs(c)).collect()
    }

    pub fn fp27_from_coeffs(&self, cs: &[Fp]) -> Result<Fp27> {
        if cs.len() != 27 {
            return Err(Error::LevelMismatch);
        }
        let mut blocks = Vec::new();
        for j in 0..3 {
            blocks.push(self.t9.fp9_from_coeffs(&cs[9 * j..9 * (j + 1)])?);
        }
        Ok(Fp27([blocks[0].clone(), blocks[1].clone(), blocks[2].clone()]))
    }
}

impl Ops<Fp9> for Tower27 {
    fn zero(&self) -> Fp9 {
        self.t9.zero9()
    }
    fn one(&self) -> Fp9 {
        self.t9.one9()
    }
    fn add(&self, a: &Fp9, b: &Fp9) -> Fp9 {
        self.t9.add9(a, b)
    }
    fn sub(&self, a: &Fp9, b: &Fp9) -> Fp9 {
        self.t9.sub9(a, b)
    }
    fn neg(&self, a: &Fp9) -> Fp9 {
        self.t9.neg9(a)
    }
    fn mul(&self, a: &Fp9, b: &Fp9, led: &mut CostLedger) -> Fp9 {
        self.t9.mul9(a, b, led)
    }
    fn square(&self, a: &Fp9, led: &mut CostLedger) -> Fp9 {
        self.t9.sq9(a, led)
    }
    fn inv(&self, a: &Fp9, led: &mut CostLedger) -> Result<Fp9> {
        self.t9.inv9(a, led)
    }
    fn mul_xi(&self, a: &Fp9) -> Fp9 {
        self.t9.mul9_by_v(a)
    }
    fn div_xi(&self, a: &Fp9) -> Fp9 {
        self.t9.div9_by_v(a)
    }
    fn mul_small(&self, a: &Fp9, k: i64) -> Fp9 {
        Fp9(std::array::from_fn(|j| {
            <Tower9 as Ops<super::t9::Fp3>>::mul_small(&self.t9, &a.0[j], k)
        }))
    }
    fn div_small(&self, a: &Fp9, k: u64) -> Fp9 {
        Fp9(std::array::from_fn(|j| {
            <Tower9 as Ops<super::t9::Fp3>>::div_small(&self.t9, &a.0[j], k)
        }))
    }
    fn is_zero(&self, a: &Fp9) -> bool {
        self.t9.is_zero9(a)
    }
}
