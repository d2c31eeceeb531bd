//! The library against the brute-force oracle and against frozen values the
//! oracle produced.

mod common;

use common::Brute;
use logbundle::jacobian::JacobianData;
use logbundle::parse::parse_poly;
use logbundle::syzygy::{ar_dim, SyzygyModule};
use logbundle::{FieldSpec, Scalar};

struct Frozen {
    f: &'static str,
    tau: usize,
    r: u32,
    n: &'static [usize],
    gens: &'static [u32],
}

const CORPUS: &[Frozen] = &[
    Frozen { f: "x*y*z", tau: 3, r: 1, n: &[0, 0, 0, 0], gens: &[1, 1] },
    Frozen { f: "x^3+y^3+z^3", tau: 0, r: 2, n: &[1, 3, 3, 1], gens: &[2, 2, 2] },
    Frozen { f: "x^2*z+y^3+x*y*z", tau: 1, r: 2, n: &[0, 2, 2, 0], gens: &[2, 2, 2, 2] },
    Frozen { f: "x^4+y^4+z^4", tau: 0, r: 3, n: &[1, 3, 6, 7, 6, 3, 1], gens: &[3, 3, 3] },
    Frozen { f: "x*y*(x+y)*(x+2*y)*z", tau: 13, r: 1, n: &[0; 10], gens: &[1, 3] },
    Frozen { f: "x^5+y^5+(x^4+y^4)*z", tau: 9, r: 2, n: &[0, 0, 0, 2, 3, 3, 2, 0, 0, 0], gens: &[2, 4, 4, 4] },
    Frozen { f: "2*x^5+2*y^5+5*x^2*y^2*z", tau: 10, r: 3, n: &[0, 0, 0, 0, 2, 2, 0, 0, 0, 0], gens: &[3, 3, 3, 3] },
    Frozen {
        f: "(x^2+y^2)^3+(y^3+z^3)^2",
        tau: 12,
        r: 3,
        n: &[0, 0, 0, 1, 4, 6, 7, 6, 4, 1, 0, 0, 0],
        gens: &[3, 5, 5, 5],
    },
    Frozen {
        f: "x^6+y^6+3*x^2*y^2*z^2",
        tau: 12,
        r: 4,
        n: &[0, 0, 0, 0, 3, 6, 7, 6, 3, 0, 0, 0, 0],
        gens: &[4, 4, 5, 5, 5],
    },
];

fn library(src: &str) -> (JacobianData, SyzygyModule) {
    let f = parse_poly(src, &FieldSpec::Rationals).unwrap();
    let jd = JacobianData::new(&f, &FieldSpec::Rationals).unwrap();
    let m = SyzygyModule::new(&jd, None).unwrap();
    (jd, m)
}

#[test]
fn oracle_reproduces_frozen_values() {
    for c in CORPUS {
        let b = Brute::new(c.f);
        let n: Vec<usize> = (0..=b.t()).map(|k| b.n_dim(k)).collect();
        assert_eq!(b.tau(), c.tau, "{}", c.f);
        assert_eq!(b.mdr(), c.r, "{}", c.f);
        assert_eq!(n, c.n, "{}", c.f);
        assert_eq!(b.generator_degrees(2 * b.d as i64 - 2), c.gens, "{}", c.f);
    }
}

#[test]
fn library_matches_frozen_values() {
    for c in CORPUS {
        let (jd, m) = library(c.f);
        assert_eq!(jd.tau, c.tau, "{}", c.f);
        assert_eq!(m.r, c.r, "{}", c.f);
        assert_eq!(jd.n_dims(), c.n, "{}", c.f);
        let low: Vec<u32> = m.generator_degrees().into_iter().filter(|&k| k <= 2 * jd.d - 2).collect();
        assert_eq!(low, c.gens, "{}", c.f);
    }
}

#[test]
fn library_matches_oracle_degree_by_degree() {
    for c in CORPUS {
        let (jd, _) = library(c.f);
        let b = Brute::new(c.f);
        for k in 0..=2 * jd.d as i64 {
            assert_eq!(jd.j_dim(k), b.j_dim(k), "{} j_{k}", c.f);
            assert_eq!(jd.n_dim(k), b.n_dim(k), "{} n_{k}", c.f);
            assert_eq!(ar_dim(&jd, k), b.ar_dim(k), "{} ar_{k}", c.f);
        }
    }
}

#[test]
fn multiplication_by_linear_forms_matches_oracle() {
    let lines = [[1, 0, 0], [0, 0, 1], [1, 2, 3], [3, -1, 2]];
    for c in CORPUS {
        let (jd, _) = library(c.f);
        let b = Brute::new(c.f);
        for s in 0..jd.t as i64 {
            for l in lines {
                let coords = l.map(Scalar::from_int);
                let rank = jd.linear_form_matrix(s, &coords).rank();
                let injective = rank == jd.n_dim(s);
                assert_eq!(injective, b.linear_form_injective(s, l), "{} s={s} l={l:?}", c.f);
            }
        }
    }
}
