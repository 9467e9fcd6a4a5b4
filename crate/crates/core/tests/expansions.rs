use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qhecke::closed_forms::{f331_expansion, f441_expansion, thm_main_expansion};
use qhecke::hecke::{hecke_f, HeckeParams2};
use qhecke::{Error, QMonomial, Series};

fn admissible(rng: &mut StdRng) -> HeckeParams2 {
    loop {
        let a = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let b = rng.gen_range(1..=6);
        if b % a == 0 && b % c == 0 && a * c < b * b {
            return HeckeParams2::new(a, b, c).unwrap();
        }
    }
}

#[test]
fn random_expansions_match_double_sum() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut checked = 0;
    let mut tries = 0;
    while checked < 15 {
        tries += 1;
        assert!(tries < 500, "too few admissible instances");
        let p = admissible(&mut rng);
        let x = QMonomial::new(if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(-3..=5));
        let y = QMonomial::new(if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(-3..=5));
        match thm_main_expansion::<qhecke::Rational>(p, x, y, 30) {
            Ok(r) => {
                let direct: Series = hecke_f(p, x, y, 30);
                assert_eq!(r.total, direct, "f_{{{p}}}({x}, {y})");
                checked += 1;
            }
            Err(e) => assert!(
                matches!(e.root(), Error::Pole { .. } | Error::ThetaZero(_)),
                "unexpected error for f_{{{p}}}({x}, {y}): {e}"
            ),
        }
    }
}

#[test]
fn specialisations_agree_with_general_form() {
    let q = QMonomial::q_pow;
    let nq = QMonomial::neg_q_pow;
    let p441 = HeckeParams2::new(4, 4, 1).unwrap();
    let p331 = HeckeParams2::new(3, 3, 1).unwrap();
    let a: Series = f441_expansion(nq(5), q(3), 50).unwrap().total;
    assert_eq!(a, hecke_f(p441, nq(5), q(3), 50));
    let b: Series = f331_expansion(nq(4), q(3), 50).unwrap().total;
    assert_eq!(b, hecke_f(p331, nq(4), q(3), 50));
    let g: Series = thm_main_expansion(p331, nq(4), q(3), 50).unwrap().theta_part;
    assert_eq!(f331_expansion::<qhecke::Rational>(nq(4), q(3), 50).unwrap().theta_part, g);
}
