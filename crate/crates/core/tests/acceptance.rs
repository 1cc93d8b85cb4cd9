//! End-to-end acceptance checks. Each test prints one PASS line with its
//! measured runtime (visible under `cargo test -- --nocapture`); assertion
//! failures mark the criterion as failed.

use std::time::Instant;

use vvframe_core::ambiguity::{
    ambiguity_a1, ambiguity_apd, ambiguity_scalar, ambiguity_stft_identity,
};
use vvframe_core::matrix::{inner, ComplexMatrix};
use vvframe_core::mult::{
    cross_product_frame, enumerate_multiplications, gmatrix_test, harmonic_equivalence,
    is_frame_multiplication, make_harmonic_frame, FrameProduct, OpTable,
};
use vvframe_core::rng::Rng;
use vvframe_core::uncertainty::{apply_p, apply_q, classical_q, hilbert_up, verify_up};
use vvframe_core::vvdft::{
    d_matrix, dft_operator_matrix, gelfand_spectrum, make_dft_frame, vv_convolve, vv_dft, vv_idft,
    SelectionMap,
};
use vvframe_core::{FiniteAbelianGroup, Frame, Tol, VVSignal, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn tol() -> Tol {
    Tol::default()
}

fn report(criterion: &str, started: Instant) {
    println!(
        "acceptance {}: PASS ({:.3} ms)",
        criterion,
        started.elapsed().as_secs_f64() * 1e3
    );
}

/// The worked example frame indexed by Z/4Z.
fn z4_frame() -> Frame {
    Frame::new(
        2,
        vec![
            vec![c(1.0, 1.0), c(1.0, -1.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
            vec![c(1.0, -1.0), c(1.0, 1.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ],
    )
    .unwrap()
}

/// The spanning redundant frame {e1, e2, (1/2, 1/4)} with empty
/// multiplication set.
fn no_mult_frame() -> Frame {
    Frame::new(
        2,
        vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.5, 0.0), c(0.25, 0.0)],
        ],
    )
    .unwrap()
}

#[test]
fn criterion_01_d_matrix_invertibility() {
    let started = Instant::now();
    for l in [1usize, 3] {
        let m = d_matrix(4, l);
        let sv = m.singular_values();
        assert!(
            sv.last().copied().unwrap() >= 1.0,
            "D_{} smallest singular value {:?}",
            l,
            sv.last()
        );
        assert_eq!(m.rank(), 4);
    }
    let m = d_matrix(4, 2);
    assert_eq!(m.rank(), 2);
    report("1 (D_l invertibility pattern for N=4)", started);
}

#[test]
fn criterion_02_inversion_theorem() {
    let started = Instant::now();
    let sel = SelectionMap::new(8, vec![1, 3, 5]).unwrap();
    let mut rng = Rng::new(1002);
    for _ in 0..50 {
        let u = rng.signal(8, 3);
        let back = vv_idft(&vv_dft(&u, &sel).unwrap(), &sel).unwrap();
        assert!(back.sub(&u).unwrap().norm() <= 1e-10);
    }
    let f = dft_operator_matrix(&sel);
    let gram = f.adjoint().mul(&f);
    let expect = ComplexMatrix::identity(24).scale(c(8.0, 0.0));
    assert!(gram.sub(&expect).max_abs() <= 1e-9);

    let bad = SelectionMap::new(4, vec![1, 2]).unwrap();
    let mut witness = VVSignal::zeros(4, 2);
    witness.set(0, 1, c(1.0, 0.0));
    witness.set(2, 1, c(-1.0, 0.0));
    let hat = vv_dft(&witness, &bad).unwrap();
    assert!(hat.norm() <= 1e-12);
    report("2 (inversion theorem and kernel witness)", started);
}

#[test]
fn criterion_03_convolution_theorem() {
    let started = Instant::now();
    let sel = SelectionMap::new(6, vec![1, 5]).unwrap();
    let mut rng = Rng::new(1003);
    for _ in 0..100 {
        let u = rng.signal(6, 2);
        let v = rng.signal(6, 2);
        let lhs = vv_dft(&vv_convolve(&u, &v).unwrap(), &sel).unwrap();
        let rhs = vv_dft(&u, &sel)
            .unwrap()
            .pointwise_mul(&vv_dft(&v, &sel).unwrap())
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-10);
    }
    report("3 (convolution theorem)", started);
}

#[test]
fn criterion_04_gelfand_spectrum() {
    let started = Instant::now();
    let sel = SelectionMap::new(6, vec![1, 5]).unwrap();
    let spectrum = gelfand_spectrum(&sel).unwrap();
    assert_eq!(spectrum.len(), 12);
    let mut rng = Rng::new(1004);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = rng.signal(6, 2);
        let hat = vv_dft(&x, &sel).unwrap();
        for gamma in &spectrum {
            let dev =
                (gamma.apply(&x).unwrap() - hat.get(gamma.frequency(), gamma.component())).norm();
            worst = worst.max(dev);
        }
    }
    assert!(worst <= 1e-12, "max deviation {}", worst);
    report("4 (Gelfand spectrum is the transform)", started);
}

#[test]
fn criterion_05_z4_worked_example() {
    let started = Instant::now();
    let frame = z4_frame();
    let g = frame.gramian();
    let expect = [
        [c(4.0, 0.0), c(2.0, 2.0), c(0.0, 0.0), c(2.0, -2.0)],
        [c(2.0, -2.0), c(4.0, 0.0), c(2.0, 2.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(2.0, -2.0), c(4.0, 0.0), c(2.0, 2.0)],
        [c(2.0, 2.0), c(0.0, 0.0), c(2.0, -2.0), c(4.0, 0.0)],
    ];
    for j in 0..4 {
        for k in 0..4 {
            assert_eq!(g.get(j, k), expect[j][k], "Gramian entry ({}, {})", j, k);
        }
    }
    let group = FiniteAbelianGroup::cyclic(4).unwrap();
    let witness = gmatrix_test(&g, &group, &tol())
        .unwrap()
        .expect("Gramian is a G-matrix for Z/4Z");
    let nu_expect = [c(4.0, 0.0), c(2.0, -2.0), c(0.0, 0.0), c(2.0, 2.0)];
    for (got, want) in witness.nu.iter().zip(&nu_expect) {
        assert!((got - want).norm() <= 1e-12);
    }
    let cert = harmonic_equivalence(&frame, &group, &tol()).unwrap();
    assert!((cert.scale - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-9);
    let mapped: Vec<Vec<C64>> = (0..4)
        .map(|g| {
            cert.unitary
                .mul_vec(frame.vector(g))
                .iter()
                .map(|z| z * cert.scale)
                .collect()
        })
        .collect();
    let mut law_dev: f64 = 0.0;
    for g in 0..4 {
        for h in 0..4 {
            for p in 0..2 {
                let dev = (mapped[(g + h) % 4][p] - mapped[g][p] * mapped[h][p]).norm();
                law_dev = law_dev.max(dev);
            }
        }
    }
    assert!(law_dev <= 1e-9, "multiplication law deviation {}", law_dev);
    report("5 (Z/4Z worked example)", started);
}

#[test]
fn criterion_06_cross_product_frame() {
    let started = Instant::now();
    let (frame, table) = cross_product_frame();
    let s = frame.frame_operator();
    assert!(
        s.sub(&ComplexMatrix::identity(3).scale(c(2.0, 0.0)))
            .max_abs()
            <= 1e-12
    );
    assert!(
        is_frame_multiplication(&frame, &table, &tol())
            .unwrap()
            .accepted
    );
    assert_eq!(table.get(1, 2), 3);
    assert_eq!(table.get(2, 1), 6);

    let product = FrameProduct::new(&frame, &table, &tol()).unwrap();
    let mut rng = Rng::new(1006);
    for _ in 0..100 {
        let u = rng.complex_vec(3);
        let v = rng.complex_vec(3);
        let got = product.multiply(&u, &v).unwrap();
        let expect = vec![
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        for p in 0..3 {
            assert!((got[p] - expect[p]).norm() <= 1e-12);
        }
    }
    report("6 (cross-product frame)", started);
}

#[test]
fn criterion_07_no_multiplications_exhaustive() {
    let started = Instant::now();
    let frame = no_mult_frame();
    let found = enumerate_multiplications(&frame, None, &tol()).unwrap();
    assert!(
        found.is_empty(),
        "expected empty multiplication set, found {} tables",
        found.len()
    );
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "exhaustive search took {:?}",
        elapsed
    );
    report(
        "7 (mult(X_{1/2,1/4}) is empty over all 3^9 tables)",
        started,
    );
}

#[test]
fn criterion_08_abelian_classification() {
    let started = Instant::now();
    let cases: Vec<FiniteAbelianGroup> = vec![
        FiniteAbelianGroup::cyclic(5).unwrap(),
        FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
    ];
    for group in &cases {
        let frame = make_harmonic_frame(group, &[1, 2], None).unwrap();
        let accepted = is_frame_multiplication(&frame, &group.op_table(), &tol())
            .unwrap()
            .accepted;
        let gmatrix = gmatrix_test(&frame.gramian(), group, &tol())
            .unwrap()
            .is_some();
        assert!(accepted && gmatrix, "group frame must pass both tests");

        let mut vectors: Vec<Vec<C64>> = frame.iter().cloned().collect();
        vectors[1][0] += c(1e-2, 0.0);
        let perturbed = Frame::new(2, vectors).unwrap();
        let accepted = is_frame_multiplication(&perturbed, &group.op_table(), &tol())
            .unwrap()
            .accepted;
        let gmatrix = gmatrix_test(&perturbed.gramian(), group, &tol())
            .unwrap()
            .is_some();
        assert!(
            !accepted && !gmatrix,
            "perturbed frame must fail both tests"
        );
    }
    report("8 (group acceptance iff G-matrix Gramian)", started);
}

#[test]
fn criterion_09_ambiguity_consistency() {
    let started = Instant::now();
    for n in [4usize, 7, 16] {
        let sel = SelectionMap::new(n, vec![1]).unwrap();
        let frame = make_dft_frame(&sel);
        let table = OpTable::cyclic_addition(n);
        let mut rng = Rng::new(1009 + n as u64);
        let u = rng.signal(n, 1);
        let scalar_input: Vec<C64> = (0..n).map(|m| u.get(m, 0)).collect();
        let expect = ambiguity_scalar(&scalar_input);
        let got = ambiguity_a1(&u, &frame, &table, &tol()).unwrap();
        assert!(got.max_abs_diff(&expect) <= 1e-12, "N = {}", n);
    }

    let sel = SelectionMap::new(8, vec![1, 3, 5]).unwrap();
    let mut rng = Rng::new(1009);
    let u = rng.signal(8, 3);
    let surface = ambiguity_apd(&u, &sel).unwrap();
    let frame = make_dft_frame(&sel);
    let mut worst: f64 = 0.0;
    for m in 0..8 {
        for doppler in 0..8 {
            for p in 0..3 {
                let mut acc = c(0.0, 0.0);
                for k in 0..8 {
                    let x = frame.vector((k * doppler) % 8)[p];
                    acc += u.get((m + k) % 8, p) * u.get(k, p).conj() * x.conj();
                }
                acc /= 8.0;
                worst = worst.max((acc - surface.get(m, doppler)[p]).norm());
            }
        }
    }
    assert!(worst <= 1e-12, "direct-form deviation {}", worst);

    let stft = ambiguity_stft_identity(&u, &sel).unwrap();
    assert!(stft.max_deviation <= 1e-10);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    report("9 (ambiguity definitions agree)", started);
}

#[test]
fn criterion_10_uncertainty() {
    let started = Instant::now();
    let sel = SelectionMap::new(8, vec![1, 3]).unwrap();
    let q = classical_q(&sel);
    for m in 0..8 {
        for p in 0..2 {
            let expect = -2.0 * (2.0 * std::f64::consts::PI * (m * sel.s(p)) as f64 / 8.0).sin();
            assert!((q.get(m, p).re - expect).abs() <= 1e-14);
            assert_eq!(q.get(m, p).im, 0.0);
        }
    }

    let mut rng = Rng::new(1010);
    for _ in 0..20 {
        let u = rng.signal(8, 2);
        let lhs = vv_dft(&apply_p(&u), &sel).unwrap();
        let rhs = apply_q(&q, &vv_dft(&u, &sel).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-10);
    }

    for _ in 0..1000 {
        let u = rng.signal(8, 2);
        let r = verify_up(&u, &q, &tol()).unwrap();
        assert!(r.holds);
        assert!(r.slack >= -1e-9 * r.rhs);
    }

    let a = ComplexMatrix::from_entries(
        3,
        3,
        vec![
            c(1.5, 0.0),
            c(0.0, -0.7),
            c(0.2, 0.1),
            c(0.0, 0.7),
            c(-0.4, 0.0),
            c(0.3, -0.2),
            c(0.2, -0.1),
            c(0.3, 0.2),
            c(0.8, 0.0),
        ],
    )
    .unwrap();
    let b = ComplexMatrix::identity(3);
    let x = a.hermitian_eigen().vectors.col(1);
    let rep = hilbert_up(&a, &b, &x, &tol()).unwrap();
    assert!(rep.equality_case);
    let gap = (rep.moment_rhs - rep.moment_lhs).abs();
    assert!(gap <= 1e-9 * rep.moment_rhs.max(f64::MIN_POSITIVE));

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 2.0, "took {:?}", elapsed);
    report("10 (uncertainty principles)", started);
}

/// Closing sanity check tying several modules together: the Z/4Z frame, its
/// representation, and the DFT frame it is equivalent to.
#[test]
fn cross_module_consistency() {
    let frame = z4_frame();
    let group = FiniteAbelianGroup::cyclic(4).unwrap();
    let cert = harmonic_equivalence(&frame, &group, &tol()).unwrap();
    let sel = SelectionMap::new(4, vec![0, 1]).unwrap();
    let dft = make_dft_frame(&sel);
    // the image frame is the (0,1)-selected DFT frame
    for g in 0..4 {
        let mapped: Vec<C64> = cert
            .unitary
            .mul_vec(frame.vector(g))
            .iter()
            .map(|z| z * cert.scale)
            .collect();
        for p in 0..2 {
            assert!((mapped[p] - dft.vector(g)[p]).norm() <= 1e-9);
        }
    }
    // and its Gramian stays a G-matrix
    assert!(gmatrix_test(&dft.gramian(), &group, &tol())
        .unwrap()
        .is_some());
    let _ = inner(frame.vector(0), frame.vector(1));
}
