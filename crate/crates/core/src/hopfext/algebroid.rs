//! Weierstraß Hopf algebroids and their cosimplicial structure.
//!
//! `Γ^{⊗_A s}` is modelled as the polynomial ring `A[x_1,…,x_s]` where each
//! block `x_i` is a copy of the cover generators. In that model the cofaces
//! are ring maps and everything below is substitution.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exactalg::{Coefficients, GradedRing, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct HopfAlgebroid {
    name: String,
    base: GradedRing,
    cover_names: Vec<String>,
    cover_degrees: Vec<u32>,
    /// `η_R(a_i)` in `Γ` (variables: base then cover).
    right_unit: Vec<Poly>,
    /// `Ψ(g)` in `A[x_1, x_2]`.
    coproduct: Vec<Poly>,
    /// `ε(g)` in `A`.
    counit: Vec<Poly>,
    discriminant: Poly,
}

/// b- and c-quantities of a long Weierstraß equation, as polynomials in
/// `a1,a2,a3,a4,a6` (any of which may be the zero polynomial).
pub struct WeierstrassInvariants {
    pub b2: Poly,
    pub b4: Poly,
    pub b6: Poly,
    pub b8: Poly,
    pub c4: Poly,
    pub c6: Poly,
    pub delta: Poly,
}

pub fn weierstrass_invariants(a1: &Poly, a2: &Poly, a3: &Poly, a4: &Poly, a6: &Poly) -> WeierstrassInvariants {
    let n = a1.nvars();
    let k = |c: i64| Poly::constant(n, BigInt::from(c));
    let b2 = &(a1 * a1) + &(&k(4) * a2);
    let b4 = &(&k(2) * a4) + &(a1 * a3);
    let b6 = &(a3 * a3) + &(&k(4) * a6);
    let b8 = &(&(&(&(&(a1 * a1) * a6) + &(&(&k(4) * a2) * a6)) - &(&(a1 * a3) * a4)) + &(&(a2 * a3) * a3)) - &(a4 * a4);
    let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
    let c6 = &(&(&k(36) * &(&b2 * &b4)) - &(&(&b2 * &b2) * &b2)) - &(&k(216) * &b6);
    let delta = {
        let t1 = -&(&(&b2 * &b2) * &b8);
        let t2 = &k(8) * &(&(&b4 * &b4) * &b4);
        let t3 = &k(27) * &(&b6 * &b6);
        let t4 = &k(9) * &(&(&b2 * &b4) * &b6);
        &(&(&t1 - &t2) - &t3) + &t4
    };
    WeierstrassInvariants { b2, b4, b6, b8, c4, c6, delta }
}

impl HopfAlgebroid {
    /// `(A, A[r,s,t])` with `A = Z[a1,a2,a3,a4,a6]`, from the substitution
    /// `x ↦ x + r`, `y ↦ y + s·x + t`.
    pub fn weierstrass() -> Result<Self> {
        let base = GradedRing::new(&["a1", "a2", "a3", "a4", "a6"], &[1, 2, 3, 4, 6], Coefficients::Integers)?;
        // Γ variables: a1 a2 a3 a4 a6 r s t
        let g = |i: usize| Poly::var(8, i);
        let (a1, a2, a3, a4, a6) = (g(0), g(1), g(2), g(3), g(4));
        let (r, s, t) = (g(5), g(6), g(7));
        let k = |c: i64| Poly::constant(8, BigInt::from(c));
        let right_unit = vec![
            &a1 + &(&k(2) * &s),
            &(&(&a2 - &(&s * &a1)) + &(&k(3) * &r)) - &(&s * &s),
            &(&a3 + &(&r * &a1)) + &(&k(2) * &t),
            &(&(&(&(&a4 - &(&s * &a3)) + &(&k(2) * &(&r * &a2))) - &(&(&t + &(&r * &s)) * &a1)) + &(&k(3) * &(&r * &r)))
                - &(&k(2) * &(&s * &t)),
            &(&(&(&(&(&a6 + &(&r * &a4)) + &(&(&r * &r) * &a2)) + &(&(&r * &r) * &r)) - &(&t * &a3)) - &(&t * &t))
                - &(&(&r * &t) * &a1),
        ];
        // A[x1, x2] variables: a's, (r1 s1 t1), (r2 s2 t2)
        let h = |i: usize| Poly::var(11, i);
        let coproduct = vec![&h(5) + &h(8), &h(6) + &h(9), &(&h(7) + &h(10)) + &(&h(6) * &h(8))];
        let counit = vec![Poly::zero(5); 3];
        let inv = {
            let x = |i| Poly::var(5, i);
            weierstrass_invariants(&x(0), &x(1), &x(2), &x(3), &x(4))
        };
        Self::assemble("weierstrass", base, &["r", "s", "t"], &[2, 1, 3], right_unit, coproduct, counit, inv.delta)
    }

    /// `(A', A'[r])` with `A' = Z[a2,a4,a6]`: curves `y² = x³ + a2x² + a4x + a6`
    /// under `x ↦ x + r`. Once 2 is inverted every curve can be brought to
    /// this shape, so both algebroids have the same cohomology at odd primes.
    pub fn short_weierstrass() -> Result<Self> {
        let base = GradedRing::new(&["a2", "a4", "a6"], &[2, 4, 6], Coefficients::Integers)?;
        let g = |i: usize| Poly::var(4, i);
        let (a2, a4, a6, r) = (g(0), g(1), g(2), g(3));
        let k = |c: i64| Poly::constant(4, BigInt::from(c));
        let right_unit = vec![
            &a2 + &(&k(3) * &r),
            &(&a4 + &(&k(2) * &(&a2 * &r))) + &(&k(3) * &(&r * &r)),
            &(&(&a6 + &(&a4 * &r)) + &(&a2 * &(&r * &r))) + &(&(&r * &r) * &r),
        ];
        let h = |i: usize| Poly::var(5, i);
        let coproduct = vec![&h(3) + &h(4)];
        let counit = vec![Poly::zero(3)];
        let inv = {
            let x = |i| Poly::var(3, i);
            let z = Poly::zero(3);
            weierstrass_invariants(&z, &x(0), &z, &x(1), &x(2))
        };
        Self::assemble("short-weierstrass", base, &["r"], &[2], right_unit, coproduct, counit, inv.delta)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: &str,
        base: GradedRing,
        cover: &[&str],
        cover_degrees: &[u32],
        right_unit: Vec<Poly>,
        coproduct: Vec<Poly>,
        counit: Vec<Poly>,
        discriminant: Poly,
    ) -> Result<Self> {
        let alg = HopfAlgebroid {
            name: name.to_string(),
            base,
            cover_names: cover.iter().map(|s| s.to_string()).collect(),
            cover_degrees: cover_degrees.to_vec(),
            right_unit,
            coproduct,
            counit,
            discriminant,
        };
        alg.verify()?;
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &GradedRing {
        &self.base
    }

    pub fn na(&self) -> usize {
        self.base.ngens()
    }

    pub fn nc(&self) -> usize {
        self.cover_degrees.len()
    }

    pub fn cover_names(&self) -> &[String] {
        &self.cover_names
    }

    pub fn cover_degrees(&self) -> &[u32] {
        &self.cover_degrees
    }

    pub fn right_unit(&self) -> &[Poly] {
        &self.right_unit
    }

    pub fn coproduct(&self) -> &[Poly] {
        &self.coproduct
    }

    pub fn counit(&self) -> &[Poly] {
        &self.counit
    }

    pub fn discriminant(&self) -> &Poly {
        &self.discriminant
    }

    /// Number of variables of `A[x_1,…,x_s]`.
    pub fn nvars(&self, s: usize) -> usize {
        self.na() + s * self.nc()
    }

    /// Degrees of the variables of `A[x_1,…,x_s]`.
    pub fn weights(&self, s: usize) -> Vec<u32> {
        let mut w = self.base.degrees().to_vec();
        for _ in 0..s {
            w.extend_from_slice(&self.cover_degrees);
        }
        w
    }

    /// Variable names of `A[x_1,…,x_s]`; blocks are suffixed by position.
    pub fn var_names(&self, s: usize) -> Vec<String> {
        let mut v: Vec<String> = self.base.names().to_vec();
        for b in 1..=s {
            for c in &self.cover_names {
                v.push(if s == 1 { c.clone() } else { format!("{c}{b}") });
            }
        }
        v
    }

    /// Variable of cover generator `j` in block `b` (1-based) of `A[x_1,…,x_s]`.
    pub fn block_var(&self, b: usize, j: usize) -> usize {
        self.na() + (b - 1) * self.nc() + j
    }

    /// Coface `d_i : A[x_1..x_s] → A[x_1..x_{s+1}]`, `0 ≤ i ≤ s+1`, as images
    /// of variables. `d_0` applies `η_R` to coefficients and shifts blocks,
    /// `d_i` splits block `i` by `Ψ`, `d_{s+1}` appends a unit block.
    pub fn coface(&self, s: usize, i: usize) -> Vec<Poly> {
        assert!(i <= s + 1);
        let (na, nc) = (self.na(), self.nc());
        let target = self.nvars(s + 1);
        let mut images = Vec::with_capacity(self.nvars(s));
        if i == 0 {
            // Γ (vars a.., c..) → target: a ↦ a, c ↦ block 1
            let map: Vec<usize> = (0..na).chain((0..nc).map(|j| self.block_var(1, j))).collect();
            for p in &self.right_unit {
                images.push(p.relabel(&map, target));
            }
            for b in 1..=s {
                for j in 0..nc {
                    images.push(Poly::var(target, self.block_var(b + 1, j)));
                }
            }
            return images;
        }
        for a in 0..na {
            images.push(Poly::var(target, a));
        }
        for b in 1..=s {
            for j in 0..nc {
                let img = if b < i {
                    Poly::var(target, self.block_var(b, j))
                } else if b == i {
                    self.split_image(j, b, target)
                } else {
                    Poly::var(target, self.block_var(b + 1, j))
                };
                images.push(img);
            }
        }
        images
    }

    /// `Ψ(g_j)` placed in blocks `b, b+1` of a ring with `target` variables.
    /// Coefficients from `A` are moved to position `b-1` by iterated `η_R`.
    fn split_image(&self, j: usize, b: usize, target: usize) -> Poly {
        let (na, nc) = (self.na(), self.nc());
        let pos = self.position_images(b - 1, target);
        let mut images: Vec<Poly> = pos;
        for k in 0..nc {
            images.push(Poly::var(target, self.block_var(b, k)));
        }
        for k in 0..nc {
            images.push(Poly::var(target, self.block_var(b + 1, k)));
        }
        debug_assert_eq!(images.len(), na + 2 * nc);
        self.coproduct[j].substitute(&images)
    }

    /// Images of the base generators at position `k`, i.e. `d_0^k(a)`, inside a
    /// ring with `target` variables (`target ≥ nvars(k)`).
    pub fn position_images(&self, k: usize, target: usize) -> Vec<Poly> {
        let mut cur: Vec<Poly> = (0..self.na()).map(|a| Poly::var(self.nvars(0), a)).collect();
        for s in 0..k {
            let d0 = self.coface(s, 0);
            cur = cur.iter().map(|p| p.substitute(&d0)).collect();
        }
        let map: Vec<usize> = (0..self.nvars(k)).collect();
        cur.iter().map(|p| p.relabel(&map, target)).collect()
    }

    /// Embeds an element of `A[x_1..x_s]` into `A[x_1..x_t]`, `t ≥ s`.
    pub fn widen(&self, p: &Poly, t: usize) -> Poly {
        let map: Vec<usize> = (0..p.nvars()).collect();
        p.relabel(&map, self.nvars(t))
    }

    /// Checks degrees, counit, coassociativity, compatibility of `Ψ` with
    /// `η_R`, `ε∘η_R = id` and invariance of the discriminant.
    pub fn verify(&self) -> Result<()> {
        let (na, nc) = (self.na(), self.nc());
        let fail = |what: &str| Err(Error::Invariant(format!("{}: {what}", self.name)));
        if self.right_unit.len() != na || self.coproduct.len() != nc || self.counit.len() != nc {
            return fail("structure maps have the wrong arity");
        }
        let w1 = self.weights(1);
        let w2 = self.weights(2);
        for (i, p) in self.right_unit.iter().enumerate() {
            if p.homogeneous_degree(&w1) != Some(self.base.degrees()[i] as u64) {
                return fail("right unit does not preserve degree");
            }
        }
        for (j, p) in self.coproduct.iter().enumerate() {
            if p.homogeneous_degree(&w2) != Some(self.cover_degrees[j] as u64) {
                return fail("coproduct does not preserve degree");
            }
        }
        for p in &self.counit {
            if !p.is_zero() && p.homogeneous_degree(self.base.degrees()).is_none() {
                return fail("counit does not preserve degree");
            }
        }
        // ε∘η_R = id
        let n1 = self.nvars(1);
        let mut eps: Vec<Poly> = (0..na).map(|a| Poly::var(na, a)).collect();
        eps.extend(self.counit.iter().cloned());
        for (a, p) in self.right_unit.iter().enumerate() {
            if p.substitute(&eps) != Poly::var(na, a) {
                return fail("counit after right unit is not the identity");
            }
        }
        // counit axioms on A[x1,x2] → Γ
        let counit_in_gamma: Vec<Poly> = self.counit.iter().map(|p| self.widen(p, 1)).collect();
        let ident_gamma: Vec<Poly> = (0..n1).map(|v| Poly::var(n1, v)).collect();
        // (ε ⊗ id): block 1 ↦ ε, block 2 ↦ x
        let mut left_eps: Vec<Poly> = ident_gamma[..na].to_vec();
        left_eps.extend(counit_in_gamma.iter().cloned());
        left_eps.extend(ident_gamma[na..].iter().cloned());
        // (id ⊗ ε): block 1 ↦ x, block 2 ↦ ε moved to position 1
        let pos1 = self.position_images(1, n1);
        let mut right_eps: Vec<Poly> = ident_gamma.clone();
        for p in &self.counit {
            right_eps.push(p.substitute(&pos1));
        }
        for (j, psi) in self.coproduct.iter().enumerate() {
            let g = Poly::var(n1, na + j);
            if psi.substitute(&left_eps) != g || psi.substitute(&right_eps) != g {
                return fail("counit axiom");
            }
        }
        // coassociativity d_2 d_1 = d_1 d_1 and compatibility d_1 d_0 = d_0 d_0
        self.check_cosimplicial(2)?;
        // Δ invariant
        let d0 = self.coface(0, 0);
        if self.discriminant.substitute(&d0) != self.widen(&self.discriminant, 1) {
            return fail("discriminant is not invariant");
        }
        Ok(())
    }

    /// Cosimplicial identities `d_j d_i = d_i d_{j-1}` (`i < j`) on the
    /// generators of `A[x_1..x_s]` for all `s < s_max`. These hold on
    /// generators iff they hold on the whole ring, so `d∘d = 0` follows in
    /// every bidegree up to cohomological degree `s_max`.
    pub fn check_cosimplicial(&self, s_max: usize) -> Result<()> {
        for s in 0..s_max.saturating_sub(1) {
            let first: Vec<Vec<Poly>> = (0..=s + 1).map(|i| self.coface(s, i)).collect();
            let second: Vec<Vec<Poly>> = (0..=s + 2).map(|i| self.coface(s + 1, i)).collect();
            for v in 0..self.nvars(s) {
                for j in 1..=s + 2 {
                    for i in 0..j {
                        let lhs = first[i][v].substitute(&second[j]);
                        let rhs = first[j - 1][v].substitute(&second[i]);
                        if lhs != rhs {
                            return Err(Error::Invariant(format!(
                                "{}: d_{j} d_{i} != d_{i} d_{} on generator {v} of degree {s}",
                                self.name,
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `(Ψ⊗1)Ψ = (1⊗Ψ)Ψ` on each cover generator.
    pub fn coassociativity_holds(&self) -> bool {
        let psi = self.coface(1, 1);
        let (left, right) = (self.coface(2, 1), self.coface(2, 2));
        (0..self.nc()).all(|j| {
            let once = &psi[self.block_var(1, j)];
            once.substitute(&left) == once.substitute(&right)
        })
    }

    /// `Ψ(η_R(a)) = η_R(η_R(a))` placed in the second factor.
    pub fn right_unit_compatible(&self) -> bool {
        let d0 = self.coface(0, 0);
        let (psi, shift) = (self.coface(1, 1), self.coface(1, 0));
        d0.iter().all(|p| p.substitute(&psi) == p.substitute(&shift))
    }

    pub fn render(&self, p: &Poly, s: usize) -> String {
        crate::exactalg::graded::render_with(p, &self.var_names(s))
    }
}
