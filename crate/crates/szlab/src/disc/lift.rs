use super::{FactoredComponent, FactoredDisc, LiftedDisc};
use crate::boundary::{measure_join, AtomicMeasure, BlaschkeData, OuterSpec};
use crate::Result;

/// The canonical bounded lifting of a factored Nevanlinna disc.
///
/// With `f_j = B_j h_j s_j / t_j`, `h_j = u_j / v_j`, and `t` the join of
/// the `t_j`, the lifting is
/// `(t·v_1⋯v_n, B_1 u_1 s_1 (t/t_1) Π_{i≠1} v_i, …)`.
/// Here `t/t_j` is the singular function of `t − t_j ≥ 0`, so every
/// component is bounded, and the zeroth singular numerator is the join.
pub fn lift(f: &FactoredDisc) -> Result<LiftedDisc> {
    let comps = f.components();
    let t = measure_join(&comps.iter().map(|c| c.sing_den().clone()).collect::<Vec<_>>());
    let splits: Vec<(OuterSpec, OuterSpec)> = comps.iter().map(|c| c.outer().split()).collect();

    let product_of_v = |skip: Option<usize>| -> Result<OuterSpec> {
        splits
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip && !comps[*i].is_identically_zero())
            .try_fold(OuterSpec::one(), |acc, (_, (_, v))| acc.product(v))
    };

    let mut out = Vec::with_capacity(comps.len() + 1);
    out.push(FactoredComponent::new(
        BlaschkeData::empty(),
        product_of_v(None)?,
        t.clone(),
        AtomicMeasure::empty(),
    )?);
    for (j, c) in comps.iter().enumerate() {
        if c.is_identically_zero() {
            out.push(FactoredComponent::zero());
            continue;
        }
        let outer = splits[j].0.product(&product_of_v(Some(j))?)?;
        let sing = t.saturating_sub(c.sing_den()).sum(c.sing_num());
        out.push(FactoredComponent::new(
            c.blaschke().clone(),
            outer,
            sing,
            AtomicMeasure::empty(),
        )?);
    }
    LiftedDisc::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_disc() {
        let f = FactoredDisc::new(vec![
            FactoredComponent::constant(c(1.0, 0.0)),
            FactoredComponent::constant(c(2.0, 0.0)),
        ])
        .unwrap();
        let l = lift(&f).unwrap();
        let v = l.eval(c(0.3, 0.1));
        assert!((v[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((v[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((v[2] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn singular_denominator_moves_to_zeroth() {
        let t = AtomicMeasure::atom(0.0, 1.0).unwrap();
        let f = FactoredDisc::new(vec![FactoredComponent::new(
            BlaschkeData::empty(),
            OuterSpec::one(),
            AtomicMeasure::empty(),
            t.clone(),
        )
        .unwrap()])
        .unwrap();
        let l = lift(&f).unwrap();
        assert_eq!(l.zeroth().sing_num(), &t);
        assert!(l.components()[1].sing_num().is_empty());
    }
}
