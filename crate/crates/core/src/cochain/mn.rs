use itertools::Itertools;

use super::{sequence_sign, Arg, Cochain};
use crate::error::{Error, Result};
use crate::linalg::matrix::add_scaled;
use crate::linalg::Scalar;

fn check_g_valued(p: &Cochain, q: &Cochain) -> Result<()> {
    if p.dim() != q.dim() || p.target() != p.dim() || q.target() != q.dim() {
        return Err(Error::SpaceMismatch(
            "the bracket needs g-valued cochains on the same space".into(),
        ));
    }
    Ok(())
}

/// `P ⋄ Q` for `P ∈ C^{p+1}`, `Q ∈ C^{q+1}`.
pub fn diamond(pc: &Cochain, qc: &Cochain) -> Result<Cochain> {
    check_g_valued(pc, qc)?;
    let (p, q) = (pc.degree() - 1, qc.degree() - 1);
    let n = pc.dim();
    let second_sign = Scalar::sign(p * q);
    Ok(Cochain::from_fn(n, n, p + q + 1, |x| {
        let (lead, last) = (&x[..p + q], x[p + q]);
        let mut out = vec![Scalar::zero(); n];
        let positions: Vec<usize> = (0..p + q).collect();
        // (q,1,p−1)-unshuffles: empty when p = 0
        if p >= 1 {
            for a in positions.iter().copied().combinations(q) {
                let rest: Vec<usize> = positions.iter().copied().filter(|i| !a.contains(i)).collect();
                for (bi, &b) in rest.iter().enumerate() {
                    let c: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != bi).map(|(_, &v)| v).collect();
                    let order: Vec<usize> = a.iter().copied().chain([b]).chain(c.iter().copied()).collect();
                    let sign = sequence_sign(&order);
                    let q_args: Vec<usize> = a.iter().map(|&i| lead[i]).chain([lead[b]]).collect();
                    let inner = qc.eval_basis(&q_args);
                    if inner.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let mut p_args: Vec<Arg<'_>> = vec![Arg::Vector(&inner)];
                    p_args.extend(c.iter().map(|&i| Arg::Basis(lead[i])));
                    p_args.push(Arg::Basis(last));
                    add_scaled(&mut out, &sign, &pc.eval(&p_args));
                }
            }
        }
        // (p,q)-unshuffles
        for a in positions.iter().copied().combinations(p) {
            let b: Vec<usize> = positions.iter().copied().filter(|i| !a.contains(i)).collect();
            let order: Vec<usize> = a.iter().chain(&b).copied().collect();
            let sign = &sequence_sign(&order) * &second_sign;
            let q_args: Vec<usize> = b.iter().map(|&i| lead[i]).chain([last]).collect();
            let inner = qc.eval_basis(&q_args);
            if inner.iter().all(Scalar::is_zero) {
                continue;
            }
            let mut p_args: Vec<Arg<'_>> = a.iter().map(|&i| Arg::Basis(lead[i])).collect();
            p_args.push(Arg::Vector(&inner));
            add_scaled(&mut out, &sign, &pc.eval(&p_args));
        }
        out
    }))
}

/// `[P, Q] = P ⋄ Q − (−1)^{pq} Q ⋄ P`.
pub fn mn_bracket(pc: &Cochain, qc: &Cochain) -> Result<Cochain> {
    let (p, q) = (pc.degree() - 1, qc.degree() - 1);
    let a = diamond(pc, qc)?;
    let b = diamond(qc, pc)?;
    a.sub(&b.scale(&Scalar::sign(p * q)))
}
