use toric_itt::jacobian::*;
use toric_itt::lattice::*;
use toric_itt::laurent::*;
use toric_itt::linalg::Strategy;
use std::collections::BTreeSet;

fn main() {
    let p = cross_polytope(3);
    let f = realize(&PolynomialSpec::Random { seed: 7, bound: 997 }, &p).unwrap();
    let ctx = build_context(&p, &f, 3).unwrap();
    let g3 = jacobian_component(&ctx, 3).unwrap();
    println!("J3: rows {} cols {} rank {} boundary_rank {} dim_w {}",
        g3.matrix.rows(), g3.matrix.cols(), g3.rank, g3.boundary_rank, g3.dims.dim_w);
    // independent route: colspace_intersect_coords
    let dil = p.dilate(3);
    let keep: BTreeSet<usize> = ctx.points(3).points.iter().enumerate()
        .filter(|(_, m)| dil.contains(m, true)).map(|(i, _)| i).collect();
    let (dim, _) = g3.matrix.colspace_intersect_coords(&keep, Strategy::Exact);
    println!("W dim via colspace_intersect: {}", dim);
    let gens = u_generators(&ctx, 3).unwrap();
    println!("u gens: {}", gens.len());
    // rank of U matrix
    let int_pts = ctx.interior_points(3);
    let idx: std::collections::BTreeMap<_,_> = int_pts.points.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let cols: Vec<Vec<(usize, num_rational::BigRational)>> = gens.iter().map(|g| {
        g.poly.terms().map(|(m, c)| (*idx.get(m).unwrap(), c.clone())).collect()
    }).collect();
    let u = toric_itt::linalg::RationalMatrix::from_sparse_columns(int_pts.len(), &cols);
    println!("rank U = {}", u.rank());
    println!("dims: {:?}", graded_dims(&ctx, 3).unwrap());
}
