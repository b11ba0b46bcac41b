//! Truncated graded modules over path algebras, the functors between the
//! module categories of `LR` and `RL`, and the natural map
//! `τ: F'F(M) -> M`.
//!
//! Scalars are exact rationals. Every module is kept in degrees `0..=N`
//! and no statement is made about higher degrees.

mod context;
mod functors;
mod module;
mod morphism;
mod qmatrix;

pub use context::{build_context, BimoduleEdge, FactorizationContext};
pub use functors::{
    apply_chain, apply_f, apply_f_back, apply_f_morphism, apply_to_dims, check_eta_dimensions, hilbert,
    hom_from_free, tau, top_dims, EtaMismatch, EtaReport,
};
pub use module::{
    free_module, free_module_shifted, parse_vector, random_generated_module, random_module, simple_module,
    TruncatedGradedModule,
};
pub use morphism::{kernel_cokernel_dims, kernel_cokernel_dims_with, GradedMorphism, KerCokerTable};
pub use qmatrix::QMatrix;

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::matrix::NNMatrix;
    use crate::quiver::Quiver;
    use crate::transforms::split_lr;

    fn nn(rows: &[&[u64]]) -> NNMatrix {
        NNMatrix::from_rows(rows).unwrap()
    }

    fn ctx22() -> FactorizationContext {
        build_context(&nn(&[&[1], &[1]]), &nn(&[&[1, 1]])).unwrap()
    }

    fn ctx51() -> FactorizationContext {
        let q = Quiver::build(&["1", "2"], &[("u", "2", "1"), ("v", "1", "2"), ("w", "1", "1")]);
        let (l, r) = split_lr(&q);
        build_context(&l, &r).unwrap()
    }

    fn flat(dims: &[Vec<usize>]) -> Vec<Vec<usize>> {
        dims.to_vec()
    }

    #[test]
    fn f_on_the_free_module() {
        let ctx = ctx22();
        let m = free_module(ctx.quiver_lr(), "v1", 3).unwrap();
        assert_eq!(flat(m.dims()), [vec![1, 0], vec![1, 1], vec![2, 2], vec![4, 4]]);
        let fm = apply_f(&ctx, &m).unwrap();
        assert_eq!(flat(fm.dims()), [vec![1], vec![2], vec![4], vec![8]]);
        let ffm = apply_f_back(&ctx, &fm).unwrap();
        assert_eq!(flat(ffm.dims()), [vec![0, 0], vec![1, 1], vec![2, 2], vec![4, 4]]);
    }

    #[test]
    fn f_on_the_split_context() {
        let ctx = ctx51();
        let m = free_module(ctx.quiver_lr(), "v1", 2).unwrap();
        assert_eq!(flat(m.dims()), [vec![1, 0], vec![1, 1], vec![2, 1]]);
        let fm = apply_f(&ctx, &m).unwrap();
        assert_eq!(flat(fm.dims()), [vec![0, 1, 1], vec![1, 1, 1], vec![1, 2, 2]]);
    }

    #[test]
    fn zero_modules_stay_zero() {
        let ctx = ctx51();
        let z = TruncatedGradedModule::zero(ctx.quiver_lr(), 3);
        assert!(apply_f(&ctx, &z).unwrap().dims().iter().flatten().all(|&x| x == 0));
        let z = TruncatedGradedModule::zero(ctx.quiver_rl(), 3);
        assert!(apply_f_back(&ctx, &z).unwrap().dims().iter().flatten().all(|&x| x == 0));
        assert!(apply_f(&ctx, &z).is_err());
    }

    #[test]
    fn f_back_shifts_degree_zero_modules() {
        let ctx = ctx22();
        let s = simple_module(ctx.quiver_rl(), "v1", 3).unwrap();
        let back = apply_f_back(&ctx, &s).unwrap();
        assert_eq!(flat(back.dims()), [vec![0, 0], vec![1, 1], vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn tau_on_free_and_simple_modules() {
        let ctx = ctx22();
        let m = free_module(ctx.quiver_lr(), "v1", 4).unwrap();
        let t = tau(&ctx, &m).unwrap();
        let table = kernel_cokernel_dims(&t);
        assert!(table.ker_is_zero());
        assert_eq!(table.coker[0], [1, 0]);
        assert_eq!(table.coker_support(), [0]);

        let s = simple_module(ctx.quiver_lr(), "v2", 4).unwrap();
        let t = tau(&ctx, &s).unwrap();
        let table = kernel_cokernel_dims(&t);
        assert_eq!(table.coker, flat(s.dims()));
        // the domain sits in degree 1, over the arrows leaving v2
        assert_eq!(t.source().dims()[1], [1, 1]);
        assert!(t.source().dims()[2..].iter().flatten().all(|&x| x == 0));
        assert_eq!(table.ker[1], [1, 1]);
    }

    #[test]
    fn tau_cokernel_matches_the_top() {
        let ctx = ctx51();
        for seed in 0..10 {
            let m = random_module(ctx.quiver_lr(), 4, seed, 3);
            let t = tau(&ctx, &m).unwrap();
            assert!(t.squares_commute());
            assert_eq!(kernel_cokernel_dims(&t).coker, top_dims(&m));
            assert!(check_eta_dimensions(&ctx, &m).unwrap().ok);
        }
    }

    #[test]
    fn kernel_cokernel_of_identity_and_zero() {
        let ctx = ctx51();
        let m = random_module(ctx.quiver_lr(), 3, 5, 2);
        let id = kernel_cokernel_dims(&GradedMorphism::identity(&m));
        assert!(id.ker_is_zero() && id.coker_support().is_empty());
        let z = kernel_cokernel_dims(&GradedMorphism::zero(&m, &m).unwrap());
        assert_eq!(z.ker, flat(m.dims()));
        assert_eq!(z.coker, flat(m.dims()));
    }

    #[test]
    fn broken_squares_are_rejected() {
        let ctx = ctx22();
        let m = free_module(ctx.quiver_lr(), "v1", 2).unwrap();
        let mut comps: Vec<Vec<QMatrix>> = m
            .dims()
            .iter()
            .map(|row| row.iter().map(|&x| QMatrix::identity(x)).collect())
            .collect();
        comps[0][0] = QMatrix::zeros(1, 1);
        assert!(matches!(
            GradedMorphism::new(m.clone(), m, comps),
            Err(crate::Error::NotAMorphism { degree: 0, .. })
        ));
    }

    #[test]
    fn f_is_functorial() {
        let ctx = ctx51();
        let q = ctx.quiver_lr();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for seed in 0..5 {
            let m = random_module(q, 3, seed, 2);
            let v = rng.gen_range(0..2);
            let vname = q.vertices()[v].clone();
            let elem: Vec<BigRational> = (0..m.dim(1, v))
                .map(|_| BigRational::from_integer(rng.gen_range(-2i64..=2).into()))
                .collect();
            let theta = hom_from_free(&m, &vname, 1, &elem).unwrap();
            let p = theta.source().clone();
            let w = q.vertices()[rng.gen_range(0..2)].clone();
            let wi = q.vertex_index(&w).unwrap();
            let elem2: Vec<BigRational> = (0..p.dim(1, wi))
                .map(|_| BigRational::from_integer(rng.gen_range(-2i64..=2).into()))
                .collect();
            let theta2 = hom_from_free(&p, &w, 1, &elem2).unwrap();
            let composed = theta.compose(&theta2).unwrap();
            let lhs = apply_f_morphism(&ctx, &composed).unwrap();
            let rhs = apply_f_morphism(&ctx, &theta)
                .unwrap()
                .compose(&apply_f_morphism(&ctx, &theta2).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn chain_dimension_law() {
        let c1 = ctx22();
        let c2 = build_context(&nn(&[&[2]]), &nn(&[&[1]])).unwrap();
        let c3 = build_context(&nn(&[&[1]]), &nn(&[&[2]])).unwrap();
        let m = random_module(c1.quiver_lr(), 3, 11, 2);
        let out = apply_chain(&[c1.clone(), c2.clone(), c3.clone()], &m).unwrap();
        let prod = &(c3.r() * c2.r()) * c1.r();
        for d in 0..=3 {
            let expect = apply_to_dims(&prod, &m.dims()[d]);
            let got: Vec<BigUint> = out.dims()[d].iter().map(|&x| BigUint::from(x)).collect();
            assert_eq!(got, expect);
        }
        assert_eq!(apply_chain(&[], &m).unwrap(), m);
        assert_eq!(apply_chain(std::slice::from_ref(&c1), &m).unwrap(), apply_f(&c1, &m).unwrap());
        assert!(matches!(
            apply_chain(&[c1.clone(), c1], &m),
            Err(crate::Error::IncompatibleChain { index: 1, .. })
        ));
    }
}
