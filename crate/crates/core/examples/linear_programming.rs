//! Exact LP with checkable certificates, vertex enumeration, and lattice
//! points of a polytope.

use ptri::exact::{q, Q};
use ptri::polyhedra::{dual_description, integer_points, lp_solve, AffineForm, HPolyhedron, LpCertificate, Sense};

fn main() {
    // x, y >= 0, x + 2y <= 4, 3x + y <= 6
    let p = HPolyhedron::with_inequalities(
        2,
        vec![
            AffineForm::from_i64(&[1, 0], 0),
            AffineForm::from_i64(&[0, 1], 0),
            AffineForm::from_i64(&[-1, -2], 4),
            AffineForm::from_i64(&[-3, -1], 6),
        ],
    );
    let obj = AffineForm::from_i64(&[1, 1], 0);
    let cert = lp_solve(&p, &obj, Sense::Maximize).unwrap();
    println!("max x + y = {} at {}", cert.optimum().unwrap(), fmt(cert.point().unwrap()));
    println!("certificate verifies: {}", cert.verify(&p, &obj, Sense::Maximize));

    let v = dual_description(&p).unwrap();
    let verts: Vec<String> = v.vertices.iter().map(|x| fmt(x)).collect();
    println!("vertices: {}", verts.join(" "));
    let pts = integer_points(&p).unwrap();
    println!("{} lattice points: {:?}", pts.len(), pts);

    // adding x + y >= 3 makes it infeasible; the Farkas multipliers prove it
    let mut infeasible = p.clone();
    infeasible.add_inequality(AffineForm::new(vec![q(1), q(1)], q(-3)));
    match lp_solve(&infeasible, &obj, Sense::Maximize).unwrap() {
        LpCertificate::Infeasible(f) => {
            println!(
                "infeasible; Farkas certificate over {} inequalities, verifies {}",
                f.support_size(),
                f.verify(&infeasible)
            )
        }
        other => println!("unexpected: {:?}", other.status()),
    }
}

fn fmt(x: &[Q]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}
