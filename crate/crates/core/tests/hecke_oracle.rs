use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qhecke::hecke::{hecke_f, hecke_g, HeckeParams2, HeckeParams3};
use qhecke::{QMonomial, Series};

fn c2(v: i64) -> i64 {
    v * (v - 1) / 2
}

fn pw(s: i64, k: i64) -> i64 {
    if s < 0 && k.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// Adds `coef q^e` when `e` is in range; panics if a term on the edge of the
/// box could still contribute.
struct Acc {
    lo: i64,
    n: i64,
    c: Vec<i64>,
}

impl Acc {
    fn new(lo: i64, n: i64) -> Self {
        Acc { lo, n, c: vec![0; (n - lo + 1) as usize] }
    }

    fn add(&mut self, e: i64, v: i64, edge: bool) {
        assert!(e >= self.lo, "exponent {e} below the oracle window");
        if e <= self.n {
            assert!(!edge, "box too small");
            self.c[(e - self.lo) as usize] += v;
        }
    }

    fn series(self) -> Series {
        Series::from_i64_coeffs(self.lo, &self.c, self.n)
    }
}

fn box_f(abc: [i64; 3], x: QMonomial, y: QMonomial, n: i64, b: i64) -> Series {
    let [a, bb, c] = abc;
    let mut acc = Acc::new(-400, n);
    for r in -b..=b {
        for s in -b..=b {
            let w = match (r >= 0, s >= 0) {
                (true, true) => 1,
                (false, false) => -1,
                _ => continue,
            };
            let e = a * c2(r) + bb * r * s + c * c2(s) + x.exp() * r + y.exp() * s;
            let sign = pw(-1, r + s) * pw(x.sign(), r) * pw(y.sign(), s);
            acc.add(e, w * sign, r.abs() == b || s.abs() == b);
        }
    }
    acc.series()
}

fn box_g(p: [i64; 6], x: QMonomial, y: QMonomial, z: QMonomial, n: i64, b: i64) -> Series {
    let [a, bb, c, d, e, f] = p;
    let mut acc = Acc::new(-400, n);
    for r in -b..=b {
        for s in -b..=b {
            for t in -b..=b {
                let all_pos = r >= 0 && s >= 0 && t >= 0;
                let all_neg = r < 0 && s < 0 && t < 0;
                if !all_pos && !all_neg {
                    continue;
                }
                let ex = a * c2(r) + bb * r * s + c * c2(s) + d * r * t + e * s * t + f * c2(t)
                    + x.exp() * r
                    + y.exp() * s
                    + z.exp() * t;
                let sign = pw(-1, r + s + t) * pw(x.sign(), r) * pw(y.sign(), s) * pw(z.sign(), t);
                acc.add(ex, sign, r.abs() == b || s.abs() == b || t.abs() == b);
            }
        }
    }
    acc.series()
}

fn mono(rng: &mut StdRng) -> QMonomial {
    QMonomial::new(if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(-3..=4))
}

#[test]
fn double_sums_match_box() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..30 {
        let abc = [rng.gen_range(1..=4), rng.gen_range(1..=6), rng.gen_range(1..=4)];
        let (x, y) = (mono(&mut rng), mono(&mut rng));
        let p = HeckeParams2::new(abc[0], abc[1], abc[2]).unwrap();
        let lib: Series = hecke_f(p, x, y, 30);
        assert_eq!(lib, box_f(abc, x, y, 30, 70), "f_{{{p}}}({x}, {y})");
    }
}

#[test]
fn triple_sums_match_box() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..15 {
        let c: [i64; 6] = std::array::from_fn(|_| rng.gen_range(1..=3));
        let (x, y, z) = (mono(&mut rng), mono(&mut rng), mono(&mut rng));
        let p = HeckeParams3::new(c[0], c[1], c[2], c[3], c[4], c[5]).unwrap();
        let lib: Series = hecke_g(p, x, y, z, 20);
        assert_eq!(lib, box_g(c, x, y, z, 20, 28), "g_{{{p}}}({x}, {y}, {z})");
    }
}

#[test]
fn nonpositive_parameters_rejected() {
    assert!(HeckeParams2::new(0, 1, 1).is_err());
    assert!(HeckeParams3::new(1, 1, 1, 1, -1, 1).is_err());
}
