//! Small finite groups given by multiplication tables.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupName {
    S3,
    C2xC2,
    Q8,
    SL2F3,
    GL2F3,
}

impl GroupName {
    pub const ALL: [GroupName; 5] = [GroupName::S3, GroupName::C2xC2, GroupName::Q8, GroupName::SL2F3, GroupName::GL2F3];

    pub fn order(self) -> usize {
        match self {
            GroupName::S3 => 6,
            GroupName::C2xC2 => 4,
            GroupName::Q8 => 8,
            GroupName::SL2F3 => 24,
            GroupName::GL2F3 => 48,
        }
    }

    fn is_matrix_group(self) -> bool {
        matches!(self, GroupName::Q8 | GroupName::SL2F3 | GroupName::GL2F3)
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupName::S3 => "S3",
            GroupName::C2xC2 => "C2xC2",
            GroupName::Q8 => "Q8",
            GroupName::SL2F3 => "SL2F3",
            GroupName::GL2F3 => "GL2F3",
        };
        f.write_str(s)
    }
}

impl core::str::FromStr for GroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupName::ALL
            .into_iter()
            .find(|g| g.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(format!("unknown group {s}")))
    }
}

/// Elements are indices into `keys`; `keys` identify elements across groups
/// (permutations, bit pairs, or 2×2 matrices over F3 read row by row), which
/// is how subgroups are recognized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: GroupName,
    keys: Vec<Vec<u8>>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

type Mat2 = [u8; 4];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let m = |x: u8, y: u8| (x as u16 * y as u16) as u8;
    [
        (m(a[0], b[0]) + m(a[1], b[2])) % 3,
        (m(a[0], b[1]) + m(a[1], b[3])) % 3,
        (m(a[2], b[0]) + m(a[3], b[2])) % 3,
        (m(a[2], b[1]) + m(a[3], b[3])) % 3,
    ]
}

fn det3(a: &Mat2) -> u8 {
    ((a[0] as i32 * a[3] as i32 - a[1] as i32 * a[2] as i32).rem_euclid(3)) as u8
}

/// Entries in {−1, 0, 1} written as residues mod 3.
fn m3(v: [i8; 4]) -> Mat2 {
    v.map(|x| x.rem_euclid(3) as u8)
}

/// `i ↦ [[0,−1],[1,0]]`, `j ↦ [[1,1],[1,−1]]`.
pub const Q8_I: [i8; 4] = [0, -1, 1, 0];
pub const Q8_J: [i8; 4] = [1, 1, 1, -1];

impl FiniteGroup {
    fn from_keys(name: GroupName, keys: Vec<Vec<u8>>, mul: impl Fn(&[u8], &[u8]) -> Vec<u8>, gens: &[Vec<u8>]) -> Result<Self> {
        let index: BTreeMap<Vec<u8>, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let n = keys.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let k = mul(&keys[a], &keys[b]);
                table[a][b] = *index.get(&k).ok_or_else(|| Error::Invariant(format!("{name} is not closed")))?;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invariant(format!("{name} has no identity")))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity)
                .ok_or_else(|| Error::Invariant(format!("{name} lacks an inverse")))?;
        }
        let generators = gens
            .iter()
            .map(|g| index.get(g).copied().ok_or_else(|| Error::Invariant(format!("{name}: generator outside the group"))))
            .collect::<Result<Vec<_>>>()?;
        let g = FiniteGroup { name, keys, table, identity, inverses, generators };
        g.verify()?;
        Ok(g)
    }

    /// Associativity, identity, inverses, order, and generation.
    pub fn verify(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b];
                for c in 0..n {
                    if self.table[ab][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::Invariant(format!("{} is not associative", self.name)));
                    }
                }
            }
        }
        if n != self.name.order() {
            return Err(Error::Invariant(format!("{} has order {n}", self.name)));
        }
        if self.words().iter().any(|w| w.is_none()) {
            return Err(Error::Invariant(format!("{} is not generated by its generators", self.name)));
        }
        Ok(())
    }

    pub fn name(&self) -> GroupName {
        self.name
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn key(&self, a: usize) -> &[u8] {
        &self.keys[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_of_key(&self, key: &[u8]) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    /// For each element, a shortest word in the generators (as generator
    /// positions) with `g = w[0]·w[1]·…`, or `None` if unreachable.
    pub fn words(&self) -> Vec<Option<Vec<usize>>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                let b = self.table[a][g];
                if words[b].is_none() {
                    let mut w = words[a].clone().expect("visited");
                    w.push(gi);
                    words[b] = Some(w);
                    queue.push_back(b);
                }
            }
        }
        words
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    /// Left coset representatives of `sub` (given as an embedding into
    /// `self`): `t_0 = 1, t_1, …` with `G = ⊔ t_i H`.
    pub fn coset_reps(&self, sub: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in core::iter::once(self.identity).chain(0..self.order()) {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in sub {
                seen[self.table[g][h]] = true;
            }
        }
        reps
    }
}

pub fn build_group(name: GroupName) -> Result<FiniteGroup> {
    match name {
        GroupName::S3 => {
            let mut keys = Vec::new();
            for a in 0..3u8 {
                for b in 0..3u8 {
                    for c in 0..3u8 {
                        if a != b && b != c && a != c {
                            keys.push(vec![a, b, c]);
                        }
                    }
                }
            }
            // (σ·τ)(k) = σ(τ(k))
            let mul = |s: &[u8], t: &[u8]| t.iter().map(|&k| s[k as usize]).collect::<Vec<u8>>();
            FiniteGroup::from_keys(name, keys, mul, &[vec![1, 0, 2], vec![0, 2, 1]])
        }
        GroupName::C2xC2 => {
            let keys = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
            let mul = |a: &[u8], b: &[u8]| vec![a[0] ^ b[0], a[1] ^ b[1]];
            FiniteGroup::from_keys(name, keys, mul, &[vec![1, 0], vec![0, 1]])
        }
        GroupName::GL2F3 | GroupName::SL2F3 | GroupName::Q8 => {
            let mut all: Vec<Mat2> = Vec::new();
            for x in 0..81u32 {
                let m = [(x % 3) as u8, (x / 3 % 3) as u8, (x / 9 % 3) as u8, (x / 27) as u8];
                let d = det3(&m);
                let keep = match name {
                    GroupName::GL2F3 => d != 0,
                    _ => d == 1,
                };
                if keep {
                    all.push(m);
                }
            }
            let gens: Vec<Mat2> = match name {
                GroupName::GL2F3 => vec![m3([1, 1, 0, 1]), m3([0, -1, 1, 0]), m3([-1, 0, 0, 1])],
                GroupName::SL2F3 => vec![m3([1, 1, 0, 1]), m3([1, 0, 1, 1])],
                _ => vec![m3(Q8_I), m3(Q8_J)],
            };
            if name == GroupName::Q8 {
                all = closure(&gens);
            }
            all.sort();
            let keys: Vec<Vec<u8>> = all.iter().map(|m| m.to_vec()).collect();
            let mul = |a: &[u8], b: &[u8]| {
                mat_mul(&[a[0], a[1], a[2], a[3]], &[b[0], b[1], b[2], b[3]]).to_vec()
            };
            let g = FiniteGroup::from_keys(name, keys, mul, &gens.iter().map(|m| m.to_vec()).collect::<Vec<_>>())?;
            if name == GroupName::Q8 {
                check_quaternion_relations(&g)?;
            }
            Ok(g)
        }
    }
}

fn closure(gens: &[Mat2]) -> Vec<Mat2> {
    let one: Mat2 = [1, 0, 0, 1];
    let mut out = vec![one];
    let mut queue = VecDeque::from([one]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = mat_mul(&a, g);
            if !out.contains(&b) {
                out.push(b);
                queue.push_back(b);
            }
        }
    }
    out
}

/// `i² = j²`, `i⁴ = 1`, `i j i⁻¹ = j⁻¹`, both images of determinant 1.
fn check_quaternion_relations(q: &FiniteGroup) -> Result<()> {
    let (i, j) = (q.generators[0], q.generators[1]);
    let i2 = q.mul(i, i);
    let ok = i2 == q.mul(j, j)
        && q.mul(i2, i2) == q.identity
        && i2 != q.identity
        && q.mul(q.mul(i, j), q.inv(i)) == q.inv(j)
        && [i, j].iter().all(|&g| {
            let k = q.key(g);
            det3(&[k[0], k[1], k[2], k[3]]) == 1
        });
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant("Q8 relations fail".into()))
    }
}

/// Positions in `g` of the elements of `h`, when `h ⊂ g` by element keys.
pub fn embedding(h: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<usize>> {
    let compatible = h.name == g.name || (h.name.is_matrix_group() && g.name.is_matrix_group());
    let fail = || Error::NotSubgroup(format!("{} is not a subgroup of {}", h.name, g.name));
    if !compatible {
        return Err(fail());
    }
    (0..h.order()).map(|a| g.element_of_key(h.key(a)).ok_or_else(fail)).collect()
}

/// `ρ : Q8 → C2×C2`, dividing out `i² = −1`: `i ↦ g1`, `j ↦ g2`.
pub fn q8_to_klein(q: &FiniteGroup, k: &FiniteGroup) -> Result<Vec<usize>> {
    if q.name != GroupName::Q8 || k.name != GroupName::C2xC2 {
        return Err(Error::InvalidArgument("ρ goes from Q8 to C2xC2".into()));
    }
    group_hom(q, k, &[k.generators[0], k.generators[1]])
}

/// The homomorphism sending the generators of `src` to `images`, checked on
/// the whole multiplication table.
pub fn group_hom(src: &FiniteGroup, tgt: &FiniteGroup, images: &[usize]) -> Result<Vec<usize>> {
    let words = src.words();
    let map: Vec<usize> = words
        .iter()
        .map(|w| w.as_ref().expect("generated").iter().fold(tgt.identity, |acc, &gi| tgt.mul(acc, images[gi])))
        .collect();
    for a in 0..src.order() {
        for b in 0..src.order() {
            if map[src.mul(a, b)] != tgt.mul(map[a], map[b]) {
                return Err(Error::Invariant(format!("generator images do not define a map {} → {}", src.name, tgt.name)));
            }
        }
    }
    Ok(map)
}

/// Display helper: `[[a,b],[c,d]]` with entries in {−1,0,1}.
pub fn render_matrix_key(key: &[u8]) -> String {
    let e = |x: u8| if x == 2 { -1 } else { x as i32 };
    format!("[[{},{}],[{},{}]]", e(key[0]), e(key[1]), e(key[2]), e(key[3]))
}
