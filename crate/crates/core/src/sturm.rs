//! Sturm chains: exact counting and isolation of distinct real roots.
//!
//! Chains are built on the squarefree part with integer pseudo-remainders.
//! Each remainder is stripped to its primitive part by a positive factor,
//! which keeps coefficient growth in check without disturbing signs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootInterval {
    WholeLine,
    /// `(lo, hi]`
    HalfOpen(Rat, Rat),
}

/// A half-open interval `(lo, hi]` holding exactly one root, or the
/// degenerate `lo == hi` when the root is known exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isolated {
    pub lo: Rat,
    pub hi: Rat,
}

impl Isolated {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat::int(2)
    }
}

#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<UniPoly>,
    ints: Vec<Vec<BigInt>>,
}

fn to_ints(p: &UniPoly) -> Vec<BigInt> {
    p.primitive()
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect()
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
}

/// `-rem(a, b)` up to a positive factor.
fn neg_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = b.len() - 1;
    let lc = &b[n];
    let mut r = a.to_vec();
    let mut steps = 0usize;
    while r.len() > n {
        let shift = r.len() - 1 - n;
        let lead = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lead * bj;
        }
        r.pop();
        trim(&mut r);
        steps += 1;
    }
    // r = lc^steps * rem; flip so the result is a positive multiple of -rem
    let flip = !(lc.is_negative() && steps % 2 == 1);
    if flip {
        for c in r.iter_mut() {
            *c = -c.clone();
        }
    }
    make_primitive(&mut r);
    r
}

fn sign_at(p: &[BigInt], num: &BigInt, den: &BigInt) -> i32 {
    // sign of den^deg * p(num/den), den > 0
    if p.is_empty() {
        return 0;
    }
    let deg = p.len() - 1;
    let mut dpow = BigInt::one();
    let mut acc = p[deg].clone();
    for i in (0..deg).rev() {
        dpow *= den;
        acc = acc * num + &p[i] * &dpow;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial { op: "sturm_chain" });
        }
        let sqf = p.squarefree_part();
        let mut ints = vec![to_ints(&sqf)];
        if sqf.degree().unwrap() > 0 {
            ints.push(to_ints(&sqf.derivative()));
            loop {
                let k = ints.len();
                let next = neg_rem(&ints[k - 2], &ints[k - 1]);
                if next.is_empty() {
                    break;
                }
                ints.push(next);
            }
        }
        let seq = ints
            .iter()
            .map(|v| UniPoly::new(v.iter().cloned().map(Rat::from_integer).collect()))
            .collect();
        Ok(SturmChain { seq, ints })
    }

    pub fn seq(&self) -> &[UniPoly] {
        &self.seq
    }

    /// The squarefree polynomial the chain starts from (integral, primitive).
    pub fn base(&self) -> &UniPoly {
        &self.seq[0]
    }

    pub fn sign_of_base_at(&self, x: &Rat) -> i32 {
        sign_at(&self.ints[0], x.numer(), x.denom())
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        let (n, d) = (x.numer(), x.denom());
        variations(self.ints.iter().map(|p| sign_at(p, n, d)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.ints.iter().map(|p| {
            let lead = if p.last().unwrap().is_positive() {
                1
            } else {
                -1
            };
            let odd = (p.len() - 1) % 2 == 1;
            if !positive && odd {
                -lead
            } else {
                lead
            }
        }))
    }

    pub fn count(&self, interval: &RootInterval) -> usize {
        match interval {
            RootInterval::WholeLine => {
                self.variations_at_infinity(false) - self.variations_at_infinity(true)
            }
            RootInterval::HalfOpen(lo, hi) => {
                if lo >= hi {
                    return 0;
                }
                self.variations_at(lo)
                    .saturating_sub(self.variations_at(hi))
            }
        }
    }

    /// Strict bound on the absolute value of every real root.
    pub fn root_bound(&self) -> Rat {
        let p = &self.ints[0];
        let lead = p.last().unwrap().abs();
        let max = p.iter().map(|c| c.abs()).max().unwrap();
        Rat::new(max, lead) + rat::int(2)
    }

    /// Isolating intervals for every root in `(lo, hi]`, left to right.
    pub fn isolate_in(&self, lo: &Rat, hi: &Rat) -> Vec<Isolated> {
        let mut out = Vec::new();
        self.isolate_rec(lo.clone(), hi.clone(), &mut out);
        out
    }

    pub fn isolate_all(&self) -> Vec<Isolated> {
        let b = self.root_bound();
        self.isolate_in(&-b.clone(), &b)
    }

    fn isolate_rec(&self, lo: Rat, hi: Rat, out: &mut Vec<Isolated>) {
        match self.count(&RootInterval::HalfOpen(lo.clone(), hi.clone())) {
            0 => {}
            1 => {
                if self.sign_of_base_at(&hi) == 0 {
                    out.push(Isolated { lo: hi.clone(), hi });
                } else {
                    out.push(Isolated { lo, hi });
                }
            }
            _ => {
                let mid = (&lo + &hi) / rat::int(2);
                self.isolate_rec(lo, mid.clone(), out);
                self.isolate_rec(mid, hi, out);
            }
        }
    }

    /// Bisects an isolating interval until it is narrower than `width`.
    pub fn refine(&self, iv: &Isolated, width: &Rat) -> Isolated {
        let mut iv = iv.clone();
        while !iv.is_exact() && &(&iv.hi - &iv.lo) >= width {
            let mid = iv.midpoint();
            if self.sign_of_base_at(&mid) == 0 {
                return Isolated {
                    lo: mid.clone(),
                    hi: mid,
                };
            }
            if self.count(&RootInterval::HalfOpen(iv.lo.clone(), mid.clone())) == 1 {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
        iv
    }

    /// Floating-point approximations of all real roots.
    pub fn roots_f64(&self) -> Vec<f64> {
        let eps = Rat::new(BigInt::one(), BigInt::one() << 64usize);
        self.isolate_all()
            .iter()
            .map(|iv| {
                let scale = iv.hi.abs().max(iv.lo.abs()).max(Rat::one());
                rat::to_f64(&self.refine(iv, &(&eps * scale)).midpoint())
            })
            .collect()
    }
}

/// Number of distinct real roots of `p` in `interval`.
pub fn sturm_count(p: &UniPoly, interval: &RootInterval) -> Result<usize> {
    Ok(SturmChain::new(p)?.count(interval))
}

/// Number of distinct real roots in the open interval `(lo, hi)`.
pub fn count_open(chain: &SturmChain, lo: &Rat, hi: &Rat) -> usize {
    let c = chain.count(&RootInterval::HalfOpen(lo.clone(), hi.clone()));
    if chain.sign_of_base_at(hi) == 0 {
        c.saturating_sub(1)
    } else {
        c
    }
}
