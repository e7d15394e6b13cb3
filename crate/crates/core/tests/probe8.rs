use tsolve_core::lp::*;
use tsolve_core::Angle;

#[test]
fn find_sweep_stall() {
    for n in 2..=6usize {
        let table = symmetric_orbit_table(n, n / 2).unwrap();
        for i in 0..128 {
            let theta = Angle::new(std::f64::consts::PI * i as f64 / 127.0).unwrap();
            let mat = build_a_symmetric_with(&table, theta).unwrap();
            if let Err(e) = solve_feasibility(&mat, 1e-9) {
                println!("sym n={n} grid {i} theta={:.15}: {e}");
                println!("rows: {:?}", mat.rows);
            }
        }
        let ctable = cyclic_orbit_table(n, (n / 2).max(1)).unwrap();
        for i in 0..128 {
            let theta = Angle::new(std::f64::consts::PI * i as f64 / 127.0).unwrap();
            let mat = build_a_generic(&ctable, theta).unwrap();
            if let Err(e) = solve_feasibility(&mat, 1e-9) {
                println!("cyc n={n} grid {i} theta={:.15}: {e}");
                println!("rows: {:?}", mat.rows);
            }
        }
    }
    println!("done");
}
