use fundpoly::catalog;
use fundpoly::decoders::MpOptions;
use fundpoly::fundamental_polytope::build_polytope;
use fundpoly::rational_geometry::rat_vec;
use fundpoly::regions::*;
use fundpoly::Limits;

fn trivial_plane() -> Plane {
    Plane::axes(3, 0, 2, &[(1, 0.4)]).unwrap()
}

#[test]
fn sweeps_are_reproducible_byte_for_byte() {
    let h = catalog::trivial3();
    let limits = Limits::default();
    for spec in [DecoderSpec::Lpd, DecoderSpec::Spa(MpOptions::default()), DecoderSpec::Msa(MpOptions { alpha: 0.5, ..MpOptions::default() })] {
        let grid = Grid::new(-2.0, 2.0, 33).unwrap();
        let a = sweep(&h, &trivial_plane(), grid, spec, &limits).unwrap();
        let b = sweep(&h, &trivial_plane(), grid, spec, &limits).unwrap();
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| sweep(&h, &trivial_plane(), grid, spec, &limits).unwrap());
        assert_eq!(a.to_pgm(), b.to_pgm());
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.to_pgm(), serial.to_pgm(), "{spec:?}");
        assert_eq!(a.to_csv(), serial.to_csv(), "{spec:?}");
    }
}

#[test]
fn converged_pixels_decide_codewords_or_vertices() {
    let limits = Limits::default();
    for h in [catalog::trivial3(), catalog::dumbbell(), catalog::hamming7()] {
        let n = h.n();
        let verts = build_polytope(&h, &limits).unwrap().vertices(&limits).unwrap();
        let plane = Plane::axes(n, 0, n - 1, &(1..n - 1).map(|i| (i, 0.3 * i as f64 - 0.5)).collect::<Vec<_>>()).unwrap();
        let grid = Grid::new(-3.0, 3.0, 21).unwrap();
        for spec in [DecoderSpec::Mld, DecoderSpec::Lpd, DecoderSpec::Spa(MpOptions::default()), DecoderSpec::Msa(MpOptions::default())] {
            let s = sweep(&h, &plane, grid, spec, &limits).unwrap();
            assert_eq!(s.pixels.len(), 21 * 21);
            for p in s.pixels.iter().filter(|p| p.converged) {
                let d = s.decision_of(p);
                if matches!(spec, DecoderSpec::Lpd) {
                    assert!(verts.contains(&d.to_rat()), "{spec:?} {d:?}");
                } else {
                    assert!(d.as_binary().is_some_and(|b| h.is_codeword(b)), "{spec:?} {d:?}");
                }
            }
        }
    }
}

#[test]
fn pgm_layout() {
    let h = catalog::trivial3();
    let grid = Grid::new(-1.0, 1.0, 7).unwrap();
    let s = sweep(&h, &trivial_plane(), grid, DecoderSpec::Spa(MpOptions::default()), &Limits::default()).unwrap();
    let pgm = s.to_pgm();
    let header = b"P5\n7 7\n255\n";
    assert_eq!(&pgm[..header.len()], header);
    assert_eq!(pgm.len(), header.len() + 49);
    // The first image row is the largest b, i.e. the last row of pixels.
    let top: Vec<u8> = s.pixels[42..49].iter().map(|p| 255 - s.level(p)).collect();
    assert_eq!(&pgm[header.len()..header.len() + 7], &top[..]);
    assert!(s.pixels.iter().filter(|p| !p.converged).all(|p| s.level(p) == 255));
    assert_eq!(s.to_csv().lines().count(), 50);
}

#[test]
fn boundary_plane_contains_the_ray_direction() {
    let omega = rat_vec(&[(2, 3), (1, 1), (1, 3)]);
    let plane = Plane::boundary(&omega, Some(7), 0.0).unwrap();
    let w: Vec<f64> = omega.iter().map(fundpoly::rational_geometry::to_f64).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    for (x, y) in plane.u.iter().zip(&w) {
        assert!((x - y / norm).abs() < 1e-12);
    }
    assert!(plane.u.iter().zip(&plane.v).map(|(a, b)| a * b).sum::<f64>().abs() < 1e-12);
    assert_eq!(Plane::boundary(&omega, Some(7), 0.5).unwrap(), Plane::boundary(&omega, Some(7), 0.5).unwrap());
}

#[test]
fn bad_planes_and_grids_are_rejected() {
    assert!(Plane::new(vec![0.0; 2], vec![1.0, 0.0], vec![2.0, 0.0]).is_err());
    assert!(Plane::axes(3, 1, 1, &[]).is_err());
    assert!(Grid::new(1.0, -1.0, 5).is_err());
    assert!(Grid::new(-1.0, 1.0, 0).is_err());
    let h = catalog::hamming7();
    assert!(sweep(&h, &trivial_plane(), Grid::new(-1.0, 1.0, 3).unwrap(), DecoderSpec::Lpd, &Limits::default()).is_err());
}
