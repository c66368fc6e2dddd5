use super::grid::{Dim, Instance};
use super::ops::Ops;
use super::Law;
use crate::algebra::{concat_iso, ksum_kernel, msum_kernel, mu_kernel, unit_iso, zip_iso};
use crate::draws::hypergeometric_kernel;
use crate::draws::multinomial_closed_form;
use crate::error::{Error, Result};
use crate::finstoch::{
    chain, compose, convex_sum, coproduct_map, coprojection, copy_kernel, copy_pair, cotuple,
    discard_kernel, drop_coordinate, fst, permutation_kernel, power, series_bullet, snd, swap,
    tensor, uniform_state, FinSet, Kernel, Permutation,
};
use crate::multiset::{
    acc_kernel, canonical_section, dd_mediated, del_kernel, epsilon_kernel, flrn_kernel,
    flrn_mediated, mset_map, perm_kernel, perm_kernel_literal,
};
use crate::split::{
    accs_kernel, lsplit, lsplit_inv, msplit, msplit_codomain, msplit_inv, multichoose,
};

use Dim::*;

type Pair = Result<(Kernel, Kernel)>;

fn id(x: &FinSet) -> Kernel {
    Kernel::identity(x)
}

fn ri(from: &FinSet, to: &FinSet) -> Result<Kernel> {
    Kernel::reindex(from, to)
}

fn pw(x: &FinSet, k: usize) -> FinSet {
    FinSet::power(x, k)
}

fn ms(x: &FinSet, k: usize) -> FinSet {
    FinSet::multisets(x, k)
}

fn prod(a: &FinSet, b: &FinSet) -> FinSet {
    FinSet::product(a, b)
}

/// `(h ⊗ h) ∘ δ` against `δ ∘ h`.
fn det_pair(h: &Kernel) -> Pair {
    Ok((
        chain(&[&copy_pair(h.dom()), &tensor(h, h)])?,
        chain(&[h, &copy_pair(h.cod())])?,
    ))
}

/// `acc[1] : X → M[1](X)`, through `X ≅ X^1`.
fn acc1(x: &FinSet) -> Result<Kernel> {
    chain(&[&ri(x, &pw(x, 1))?, &acc_kernel(x, 1)])
}

/// `π = id ⊗ ! : X^{K+1} ≅ X^K ⊗ X → X^K ⊗ 1 ≅ X^K`.
fn pi_last(x: &FinSet, k: usize) -> Result<Kernel> {
    let split = prod(&pw(x, k), &pw(x, 1));
    chain(&[
        &ri(&pw(x, k + 1), &split)?,
        &tensor(&id(&pw(x, k)), &discard_kernel(&pw(x, 1))),
        &ri(&prod(&pw(x, k), &FinSet::unit()), &pw(x, k))?,
    ])
}

fn number_perm(s: &Permutation) -> Kernel {
    let n = FinSet::number(s.size());
    let s = s.clone();
    Kernel::deterministic(&n, &n, move |i| s.image(i))
}

fn law(
    id: &'static str,
    anchor: &'static str,
    dims: &'static [Dim],
    applies: fn(&Instance) -> bool,
    build: fn(&Instance, &Ops) -> Pair,
) -> Law {
    Law {
        id,
        anchor,
        dims,
        applies,
        build,
    }
}

fn always(_: &Instance) -> bool {
    true
}

fn k_pos(i: &Instance) -> bool {
    i.k >= 1
}

fn urn(i: &Instance) -> bool {
    i.l >= i.k
}

fn urn_k_pos(i: &Instance) -> bool {
    i.l >= i.k && i.k >= 1
}

fn f_det(i: &Instance) -> bool {
    i.f_kind.is_deterministic()
}

fn series_pair(i: &Instance) -> bool {
    !i.r.is_empty() && !i.s.is_empty()
}

/// Every law of the registry, in a fixed order.
pub fn law_registry() -> Vec<Law> {
    vec![
        // ---- comonoid and colimit structure -------------------------------
        law(
            "Sec2.copy-counit",
            "π₁∘δ = id",
            &[X],
            always,
            |i, _| Ok((chain(&[&copy_pair(&i.x), &fst(&i.x, &i.x)])?, id(&i.x))),
        ),
        law("Sec2.copy-comm", "γ∘δ = δ", &[X], always, |i, _| {
            Ok((
                chain(&[&copy_pair(&i.x), &swap(&i.x, &i.x)])?,
                copy_pair(&i.x),
            ))
        }),
        law(
            "Sec2.copy-assoc",
            "(δ⊗id)∘δ = α⁻¹∘(id⊗δ)∘δ",
            &[X],
            always,
            |i, _| {
                let x = &i.x;
                let d = copy_pair(x);
                Ok((
                    chain(&[&d, &tensor(&d, &id(x))])?,
                    chain(&[
                        &d,
                        &tensor(&id(x), &d),
                        &ri(&prod(x, &prod(x, x)), &prod(&prod(x, x), x))?,
                    ])?,
                ))
            },
        ),
        law(
            "Sec2.coproj-det",
            "(κᵢ⊗κᵢ)∘δ = δ∘κᵢ",
            &[X, Y],
            always,
            |i, _| {
                let parts = [i.x.clone(), i.y.clone()];
                let (a, b) = (coprojection(&parts, 0)?, coprojection(&parts, 1)?);
                let (la, ra) = det_pair(&a)?;
                let (lb, rb) = det_pair(&b)?;
                Ok((cotuple(&[la, lb])?, cotuple(&[ra, rb])?))
            },
        ),
        law(
            "Sec2.cotuple-det",
            "[d₁,d₂] deterministic for deterministic dᵢ",
            &[X, Y],
            always,
            |i, _| {
                let (x, y) = (&i.x, &i.y);
                let m = y.len();
                let d1 = Kernel::deterministic(x, y, move |j| (j / 2) % m);
                let d2 = Kernel::deterministic(y, y, move |j| (j + 1) % m);
                det_pair(&cotuple(&[d1, d2])?)
            },
        ),
        law(
            "Sec2.mediate-det",
            "M[K](f) deterministic for deterministic f",
            &[X, Y, F, K],
            f_det,
            |i, _| det_pair(&mset_map(&i.f, i.k)),
        ),
        // ---- uniform states and convex sums -------------------------------
        law(
            "Def4.1.perm-unif",
            "σ∘unif_n = unif_n",
            &[K, Sigma],
            k_pos,
            |i, _| {
                let u = uniform_state(i.k)?.as_state();
                Ok((chain(&[&u, &number_perm(&i.sigma)])?, u))
            },
        ),
        law(
            "Def4.1.unif-product",
            "unif_n⊗unif_m ≅ unif_{nm}",
            &[K, L],
            |i| i.k >= 1 && i.l >= 1,
            |i, _| {
                let (n, m) = (FinSet::number(i.k), FinSet::number(i.l));
                let one = FinSet::unit();
                Ok((
                    chain(&[
                        &ri(&one, &prod(&one, &one))?,
                        &tensor(
                            &uniform_state(i.k)?.as_state(),
                            &uniform_state(i.l)?.as_state(),
                        ),
                        &ri(&prod(&n, &m), &FinSet::number(i.k * i.l))?,
                    ])?,
                    uniform_state(i.k * i.l)?.as_state(),
                ))
            },
        ),
        law(
            "Sec4.bullet-comm",
            "r•s ≅ s•r",
            &[R, S],
            series_pair,
            |i, _| {
                let (n, m) = (FinSet::number(i.r.len()), FinSet::number(i.s.len()));
                let nm = FinSet::number(n.len() * m.len());
                Ok((
                    chain(&[
                        &series_bullet(&i.r, &i.s).as_state(),
                        &ri(&nm, &prod(&n, &m))?,
                        &swap(&n, &m),
                    ])?,
                    chain(&[
                        &series_bullet(&i.s, &i.r).as_state(),
                        &ri(&nm, &prod(&m, &n))?,
                    ])?,
                ))
            },
        ),
        law(
            "Lem4.2.seq-pre",
            "(Σ r·fᵢ)∘g = Σ r·(fᵢ∘g)",
            &[X, Y, F, G, R],
            always,
            |i, _| {
                let fam = i.f_family(i.r.len());
                let pre = fam
                    .iter()
                    .map(|f| compose(f, &i.g))
                    .collect::<Result<Vec<_>>>()?;
                Ok((
                    compose(&convex_sum(&i.r, &fam)?, &i.g)?,
                    convex_sum(&i.r, &pre)?,
                ))
            },
        ),
        law(
            "Lem4.2.seq-post",
            "h∘(Σ r·fᵢ) = Σ r·(h∘fᵢ)",
            &[X, Y, F, G, R],
            always,
            |i, _| {
                let fam = i.f_family(i.r.len());
                let post = fam
                    .iter()
                    .map(|f| compose(&i.g, f))
                    .collect::<Result<Vec<_>>>()?;
                Ok((
                    compose(&i.g, &convex_sum(&i.r, &fam)?)?,
                    convex_sum(&i.r, &post)?,
                ))
            },
        ),
        law(
            "Lem4.2.par-left",
            "Σ r·(fᵢ⊗g) = (Σ r·fᵢ)⊗g",
            &[X, Y, F, G, R],
            always,
            |i, _| {
                let fam = i.f_family(i.r.len());
                let tens: Vec<Kernel> = fam.iter().map(|f| tensor(f, &i.g)).collect();
                Ok((
                    convex_sum(&i.r, &tens)?,
                    tensor(&convex_sum(&i.r, &fam)?, &i.g),
                ))
            },
        ),
        law(
            "Lem4.2.par-right",
            "Σ r·(h⊗fᵢ) = h⊗(Σ r·fᵢ)",
            &[X, Y, F, G, R],
            always,
            |i, _| {
                let fam = i.f_family(i.r.len());
                let tens: Vec<Kernel> = fam.iter().map(|f| tensor(&i.g, f)).collect();
                Ok((
                    convex_sum(&i.r, &tens)?,
                    tensor(&i.g, &convex_sum(&i.r, &fam)?),
                ))
            },
        ),
        law(
            "Lem4.2.const",
            "Σ r·f = f",
            &[X, Y, F, R],
            always,
            |i, _| {
                Ok((
                    convex_sum(&i.r, &vec![i.f.clone(); i.r.len()])?,
                    i.f.clone(),
                ))
            },
        ),
        law(
            "Lem4.2.const-id",
            "Σ r·id = id",
            &[X, R],
            always,
            |i, _| Ok((convex_sum(&i.r, &vec![id(&i.x); i.r.len()])?, id(&i.x))),
        ),
        law(
            "Lem4.2.compose",
            "(Σ s·gⱼ)∘(Σ r·fᵢ) = Σ (s•r)·(gⱼ∘fᵢ)",
            &[X, Y, F, G, R, S],
            always,
            |i, _| {
                let fs = i.f_family(i.r.len());
                let gs = i.g_family(i.s.len());
                let mut both = Vec::new();
                for g in &gs {
                    for f in &fs {
                        both.push(compose(g, f)?);
                    }
                }
                Ok((
                    compose(&convex_sum(&i.s, &gs)?, &convex_sum(&i.r, &fs)?)?,
                    convex_sum(&series_bullet(&i.s, &i.r), &both)?,
                ))
            },
        ),
        // ---- accumulation -------------------------------------------------
        law(
            "Lem3.2.det",
            "(acc⊗acc)∘δ = δ∘acc",
            &[X, K],
            always,
            |i, _| det_pair(&acc_kernel(&i.x, i.k)),
        ),
        law(
            "Lem3.2.perm",
            "acc∘σ = acc",
            &[X, K, Sigma],
            always,
            |i, _| {
                let acc = acc_kernel(&i.x, i.k);
                Ok((chain(&[&permutation_kernel(&i.x, &i.sigma), &acc])?, acc))
            },
        ),
        law(
            "Lem3.2.natural",
            "M[K](f)∘acc = acc∘f^K",
            &[X, Y, F, K],
            always,
            |i, _| {
                Ok((
                    chain(&[&acc_kernel(&i.x, i.k), &mset_map(&i.f, i.k)])?,
                    chain(&[&power(&i.f, i.k), &acc_kernel(&i.y, i.k)])?,
                ))
            },
        ),
        law(
            "Lem3.2.functor-id",
            "M[K](id) = id",
            &[X, K],
            always,
            |i, _| Ok((mset_map(&id(&i.x), i.k), id(&ms(&i.x, i.k)))),
        ),
        law(
            "Lem3.2.functor-comp",
            "M[K](g∘f) = M[K](g)∘M[K](f)",
            &[X, Y, F, G, K],
            always,
            |i, _| {
                Ok((
                    mset_map(&compose(&i.g, &i.f)?, i.k),
                    chain(&[&mset_map(&i.f, i.k), &mset_map(&i.g, i.k)])?,
                ))
            },
        ),
        // ---- permutation averaging, ε, Flrn and arr ------------------------
        law(
            "Sec5.perm-literal",
            "perm = Σ unif_{K!}·σ",
            &[X, K],
            always,
            |i, _| Ok((perm_kernel(&i.x, i.k), perm_kernel_literal(&i.x, i.k))),
        ),
        law(
            "Def5.3.eps-well-defined",
            "ε∘τ = ε",
            &[X, K, Sigma],
            k_pos,
            |i, _| {
                let e = epsilon_kernel(&i.x, i.k)?;
                Ok((chain(&[&permutation_kernel(&i.x, &i.sigma), &e])?, e))
            },
        ),
        law(
            "Def5.3.perm-well-defined",
            "perm∘τ = perm",
            &[X, K, Sigma],
            always,
            |i, _| {
                let p = perm_kernel(&i.x, i.k);
                Ok((chain(&[&permutation_kernel(&i.x, &i.sigma), &p])?, p))
            },
        ),
        law("Def5.3.flrn", "Flrn∘acc = ε", &[X, K], k_pos, |i, _| {
            Ok((
                chain(&[&acc_kernel(&i.x, i.k), &flrn_kernel(&i.x, i.k)?])?,
                epsilon_kernel(&i.x, i.k)?,
            ))
        }),
        law("Def5.3.arr", "arr∘acc = perm", &[X, K], always, |i, o| {
            Ok((
                chain(&[&acc_kernel(&i.x, i.k), &o.arr(&i.x, i.k)])?,
                perm_kernel(&i.x, i.k),
            ))
        }),
        law(
            "Def5.3.flrn-mediated",
            "Flrn = ε∘section",
            &[X, K],
            k_pos,
            |i, _| Ok((flrn_kernel(&i.x, i.k)?, flrn_mediated(&i.x, i.k)?)),
        ),
        law(
            "Def5.3.arr-mediated",
            "arr = perm∘section",
            &[X, K],
            always,
            |i, o| {
                Ok((
                    o.arr(&i.x, i.k),
                    compose(&perm_kernel(&i.x, i.k), &canonical_section(&i.x, i.k))?,
                ))
            },
        ),
        law(
            "Lem5.1.natural",
            "perm∘f^K = f^K∘perm",
            &[X, Y, F, K],
            always,
            |i, _| {
                let fk = power(&i.f, i.k);
                Ok((
                    chain(&[&fk, &perm_kernel(&i.y, i.k)])?,
                    chain(&[&perm_kernel(&i.x, i.k), &fk])?,
                ))
            },
        ),
        law(
            "Lem5.1.copy",
            "perm∘δ[K] = δ[K]",
            &[X, K],
            always,
            |i, _| {
                let d = copy_kernel(&i.x, i.k);
                Ok((chain(&[&d, &perm_kernel(&i.x, i.k)])?, d))
            },
        ),
        law("Lem5.1.acc", "acc∘perm = acc", &[X, K], always, |i, _| {
            let acc = acc_kernel(&i.x, i.k);
            Ok((chain(&[&perm_kernel(&i.x, i.k), &acc])?, acc))
        }),
        law(
            "Lem5.2.natural",
            "ε∘f^K = f∘ε",
            &[X, Y, F, K],
            k_pos,
            |i, _| {
                Ok((
                    chain(&[&power(&i.f, i.k), &epsilon_kernel(&i.y, i.k)?])?,
                    chain(&[&epsilon_kernel(&i.x, i.k)?, &i.f])?,
                ))
            },
        ),
        law("Lem5.2.one", "ε[1] = id", &[X], always, |i, _| {
            Ok((epsilon_kernel(&i.x, 1)?, ri(&pw(&i.x, 1), &i.x)?))
        }),
        law(
            "Lem5.2.copy",
            "ε[K]∘δ[K] = id",
            &[X, K],
            k_pos,
            |i, _| {
                Ok((
                    chain(&[&copy_kernel(&i.x, i.k), &epsilon_kernel(&i.x, i.k)?])?,
                    id(&i.x),
                ))
            },
        ),
        law(
            "Lem5.4.flrn-natural",
            "Flrn∘M[K](f) = f∘Flrn",
            &[X, Y, F, K],
            k_pos,
            |i, _| {
                Ok((
                    chain(&[&mset_map(&i.f, i.k), &flrn_kernel(&i.y, i.k)?])?,
                    chain(&[&flrn_kernel(&i.x, i.k)?, &i.f])?,
                ))
            },
        ),
        law(
            "Lem5.4.arr-natural",
            "arr∘M[K](f) = f^K∘arr",
            &[X, Y, F, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&mset_map(&i.f, i.k), &o.arr(&i.y, i.k)])?,
                    chain(&[&o.arr(&i.x, i.k), &power(&i.f, i.k)])?,
                ))
            },
        ),
        law(
            "Lem5.4.acc-arr",
            "acc∘arr = id",
            &[X, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.arr(&i.x, i.k), &acc_kernel(&i.x, i.k)])?,
                    id(&ms(&i.x, i.k)),
                ))
            },
        ),
        law(
            "Lem5.4.perm-arr",
            "σ∘arr = arr",
            &[X, K, Sigma],
            always,
            |i, o| {
                let arr = o.arr(&i.x, i.k);
                Ok((chain(&[&arr, &permutation_kernel(&i.x, &i.sigma)])?, arr))
            },
        ),
        law(
            "Lem5.5.zero-final",
            "M[0](X) ≅ 1",
            &[X],
            always,
            |i, _| {
                let m0 = ms(&i.x, 0);
                Ok((
                    id(&m0),
                    chain(&[&discard_kernel(&m0), &ri(&FinSet::unit(), &m0)?])?,
                ))
            },
        ),
        law(
            "Lem5.5.one-iso-left",
            "arr[1]∘acc[1] = id",
            &[X],
            always,
            |i, o| {
                Ok((
                    chain(&[&acc_kernel(&i.x, 1), &o.arr(&i.x, 1)])?,
                    id(&pw(&i.x, 1)),
                ))
            },
        ),
        law(
            "Lem5.5.one-iso-right",
            "acc[1]∘arr[1] = id",
            &[X],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.arr(&i.x, 1), &acc_kernel(&i.x, 1)])?,
                    id(&ms(&i.x, 1)),
                ))
            },
        ),
        law(
            "Lem5.5.unit-final",
            "M[K](1) ≅ 1",
            &[K],
            always,
            |i, _| {
                let m = ms(&FinSet::unit(), i.k);
                Ok((id(&m), chain(&[&discard_kernel(&m), &unit_iso(i.k)])?))
            },
        ),
        law(
            "Lem5.5.empty",
            "M[0](0) ≅ 1, M[K](0) ≅ 0 for K > 0",
            &[K],
            always,
            |i, _| {
                let zero = FinSet::empty();
                let m = ms(&zero, i.k);
                if i.k == 0 {
                    return Ok((
                        id(&m),
                        chain(&[&discard_kernel(&m), &ri(&FinSet::unit(), &m)?])?,
                    ));
                }
                // Maps into 0 exist only out of an empty set.
                let out = Kernel::new(&m, &zero, vec![vec![]; m.len()])?;
                let back = Kernel::new(&zero, &m, vec![])?;
                Ok((id(&m), chain(&[&out, &back])?))
            },
        ),
        law(
            "Prop5.6.coproduct",
            "|M[K](X+Y)| = Σᵢ |M[i](X)|·|M[K−i](Y)|",
            &[X, Y, K],
            always,
            |i, _| {
                let m = ms(&FinSet::coproduct(&[i.x.clone(), i.y.clone()]), i.k);
                let split = msplit_codomain(&i.x, &i.y, i.k);
                Ok((id(&m), chain(&[&ri(&m, &split)?, &ri(&split, &m)?])?))
            },
        ),
        law(
            "Prop5.6.count",
            "|M[K](n)| = C(n+K−1, K)",
            &[X, K],
            always,
            |i, _| {
                let m = ms(&i.x, i.k);
                let count = multichoose(i.x.len(), i.k);
                let n = usize::try_from(&count)
                    .map_err(|_| Error::Invalid(format!("{count} too large")))?;
                let num = FinSet::number(n);
                Ok((id(&m), chain(&[&ri(&m, &num)?, &ri(&num, &m)?])?))
            },
        ),
        // ---- deletion and draw-and-delete --------------------------------
        law(
            "Lem6.1.drop-natural",
            "π̂ᵢ∘f^{K+1} = f^K∘π̂ᵢ",
            &[X, Y, F, K],
            always,
            |i, _| {
                let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
                for j in 1..=i.k + 1 {
                    lhs.push(chain(&[
                        &power(&i.f, i.k + 1),
                        &drop_coordinate(&i.y, i.k, j)?,
                    ])?);
                    rhs.push(chain(&[
                        &drop_coordinate(&i.x, i.k, j)?,
                        &power(&i.f, i.k),
                    ])?);
                }
                Ok((cotuple(&lhs)?, cotuple(&rhs)?))
            },
        ),
        law(
            "Lem6.1.del-natural",
            "del∘f^{K+1} = f^K∘del",
            &[X, Y, F, K],
            always,
            |i, _| {
                Ok((
                    chain(&[&power(&i.f, i.k + 1), &del_kernel(&i.y, i.k)])?,
                    chain(&[&del_kernel(&i.x, i.k), &power(&i.f, i.k)])?,
                ))
            },
        ),
        law(
            "Lem6.1.del-perm",
            "del∘perm[K+1] = perm[K]∘del",
            &[X, K],
            always,
            |i, _| {
                Ok((
                    chain(&[&perm_kernel(&i.x, i.k + 1), &del_kernel(&i.x, i.k)])?,
                    chain(&[&del_kernel(&i.x, i.k), &perm_kernel(&i.x, i.k)])?,
                ))
            },
        ),
        law(
            "Lem6.1.del-eps",
            "ε[K]∘del = ε[K+1]",
            &[X, K],
            k_pos,
            |i, _| {
                Ok((
                    chain(&[&del_kernel(&i.x, i.k), &epsilon_kernel(&i.x, i.k)?])?,
                    epsilon_kernel(&i.x, i.k + 1)?,
                ))
            },
        ),
        law(
            "Lem6.1.del-copy",
            "del∘δ[K+1] = δ[K]",
            &[X, K],
            always,
            |i, _| {
                Ok((
                    chain(&[&copy_kernel(&i.x, i.k + 1), &del_kernel(&i.x, i.k)])?,
                    copy_kernel(&i.x, i.k),
                ))
            },
        ),
        law(
            "Lem6.1.del-perm-proj",
            "del∘perm[K+1] = π∘perm[K+1]",
            &[X, K],
            always,
            |i, _| {
                let p = perm_kernel(&i.x, i.k + 1);
                Ok((
                    chain(&[&p, &del_kernel(&i.x, i.k)])?,
                    chain(&[&p, &pi_last(&i.x, i.k)?])?,
                ))
            },
        ),
        law(
            "Lem6.1.del-arr-proj",
            "del∘arr[K+1] = π∘arr[K+1]",
            &[X, K],
            always,
            |i, o| {
                let a = o.arr(&i.x, i.k + 1);
                Ok((
                    chain(&[&a, &del_kernel(&i.x, i.k)])?,
                    chain(&[&a, &pi_last(&i.x, i.k)?])?,
                ))
            },
        ),
        law("Eq3.dd", "DD∘acc = acc∘del", &[X, K], always, |i, o| {
            Ok((
                chain(&[&acc_kernel(&i.x, i.k + 1), &o.dd(&i.x, i.k)])?,
                chain(&[&del_kernel(&i.x, i.k), &acc_kernel(&i.x, i.k)])?,
            ))
        }),
        law(
            "Eq3.dd-mediated",
            "DD = acc∘del∘section",
            &[X, K],
            always,
            |i, o| Ok((o.dd(&i.x, i.k), dd_mediated(&i.x, i.k))),
        ),
        law(
            "Prop6.2.flrn",
            "Flrn∘DD = Flrn",
            &[X, K],
            k_pos,
            |i, o| {
                Ok((
                    chain(&[&o.dd(&i.x, i.k), &flrn_kernel(&i.x, i.k)?])?,
                    flrn_kernel(&i.x, i.k + 1)?,
                ))
            },
        ),
        law(
            "Prop6.2.arr",
            "arr∘DD = del∘arr",
            &[X, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.dd(&i.x, i.k), &o.arr(&i.x, i.k)])?,
                    chain(&[&o.arr(&i.x, i.k + 1), &del_kernel(&i.x, i.k)])?,
                ))
            },
        ),
        // ---- sums ---------------------------------------------------------
        law(
            "Def7.1.sum",
            "+ = acc∘++∘(arr⊗arr)",
            &[X, K, L],
            always,
            |i, o| {
                Ok((
                    msum_kernel(&i.x, i.k, i.l),
                    chain(&[
                        &tensor(&o.arr(&i.x, i.k), &o.arr(&i.x, i.l)),
                        &concat_iso(&i.x, i.k, i.l),
                        &acc_kernel(&i.x, i.k + i.l),
                    ])?,
                ))
            },
        ),
        law(
            "Def7.1.natural",
            "+∘(M[K](f)⊗M[L](f)) = M[K+L](f)∘+",
            &[X, Y, F, K, L],
            always,
            |i, _| {
                Ok((
                    chain(&[
                        &tensor(&mset_map(&i.f, i.k), &mset_map(&i.f, i.l)),
                        &msum_kernel(&i.y, i.k, i.l),
                    ])?,
                    chain(&[&msum_kernel(&i.x, i.k, i.l), &mset_map(&i.f, i.k + i.l)])?,
                ))
            },
        ),
        law(
            "Lem7.2.assoc",
            "+∘(+⊗id) = +∘(id⊗+)∘α",
            &[X, K, L, N],
            always,
            |i, _| {
                let (x, k, l, n) = (&i.x, i.k, i.l, i.n);
                let (mk, ml, mn) = (ms(x, k), ms(x, l), ms(x, n));
                Ok((
                    chain(&[
                        &tensor(&msum_kernel(x, k, l), &id(&mn)),
                        &msum_kernel(x, k + l, n),
                    ])?,
                    chain(&[
                        &ri(&prod(&prod(&mk, &ml), &mn), &prod(&mk, &prod(&ml, &mn)))?,
                        &tensor(&id(&mk), &msum_kernel(x, l, n)),
                        &msum_kernel(x, k, l + n),
                    ])?,
                ))
            },
        ),
        law("Lem7.2.comm", "+∘γ = +", &[X, K, L], always, |i, _| {
            Ok((
                chain(&[
                    &swap(&ms(&i.x, i.k), &ms(&i.x, i.l)),
                    &msum_kernel(&i.x, i.l, i.k),
                ])?,
                msum_kernel(&i.x, i.k, i.l),
            ))
        }),
        law(
            "Lem7.2.unit",
            "+∘(0⊗id) = id",
            &[X, K],
            always,
            |i, _| {
                let mk = ms(&i.x, i.k);
                Ok((
                    chain(&[
                        &ri(&mk, &prod(&ms(&i.x, 0), &mk))?,
                        &msum_kernel(&i.x, 0, i.k),
                    ])?,
                    id(&mk),
                ))
            },
        ),
        law(
            "Thm7.3.acc-sum",
            "+∘(acc⊗acc) = acc∘++",
            &[X, K, L],
            always,
            |i, _| {
                Ok((
                    chain(&[
                        &tensor(&acc_kernel(&i.x, i.k), &acc_kernel(&i.x, i.l)),
                        &msum_kernel(&i.x, i.k, i.l),
                    ])?,
                    chain(&[&concat_iso(&i.x, i.k, i.l), &acc_kernel(&i.x, i.k + i.l)])?,
                ))
            },
        ),
        law(
            "Thm7.3.sum-det",
            "(+⊗+)∘δ = δ∘+",
            &[X, K, L],
            always,
            |i, _| det_pair(&msum_kernel(&i.x, i.k, i.l)),
        ),
        law(
            "Thm7.3.ksum-natural",
            "Σ_K∘M[L](f)^K = M[KL](f)∘Σ_K",
            &[X, Y, F, K, L],
            always,
            |i, _| {
                Ok((
                    chain(&[
                        &power(&mset_map(&i.f, i.l), i.k),
                        &ksum_kernel(&i.y, i.k, i.l),
                    ])?,
                    chain(&[&ksum_kernel(&i.x, i.k, i.l), &mset_map(&i.f, i.k * i.l)])?,
                ))
            },
        ),
        law(
            "Thm7.3.mu-natural",
            "μ∘M[K](M[L](f)) = M[KL](f)∘μ",
            &[X, Y, F, K, L],
            always,
            |i, _| {
                Ok((
                    chain(&[
                        &mset_map(&mset_map(&i.f, i.l), i.k),
                        &mu_kernel(&i.y, i.k, i.l),
                    ])?,
                    chain(&[&mu_kernel(&i.x, i.k, i.l), &mset_map(&i.f, i.k * i.l)])?,
                ))
            },
        ),
        law(
            "Thm7.3.ksum-acc",
            "Σ_K∘acc[L]^K = acc[KL]∘++_K",
            &[X, K, L],
            always,
            |i, _| {
                let (x, k, l) = (&i.x, i.k, i.l);
                Ok((
                    chain(&[&power(&acc_kernel(x, l), k), &ksum_kernel(x, k, l)])?,
                    chain(&[
                        &ri(&pw(&pw(x, l), k), &pw(x, k * l))?,
                        &acc_kernel(x, k * l),
                    ])?,
                ))
            },
        ),
        law(
            "Thm7.3.mu-acc",
            "μ∘acc = Σ_K",
            &[X, K, L],
            always,
            |i, _| {
                Ok((
                    chain(&[&acc_kernel(&ms(&i.x, i.l), i.k), &mu_kernel(&i.x, i.k, i.l)])?,
                    ksum_kernel(&i.x, i.k, i.l),
                ))
            },
        ),
        law(
            "Thm7.3.unit-left",
            "μ_{1,K}∘acc[1] = id",
            &[X, K],
            always,
            |i, _| {
                let mk = ms(&i.x, i.k);
                Ok((chain(&[&acc1(&mk)?, &mu_kernel(&i.x, 1, i.k)])?, id(&mk)))
            },
        ),
        law(
            "Thm7.3.unit-right",
            "μ_{K,1}∘M[K](acc[1]) = id",
            &[X, K],
            always,
            |i, _| {
                Ok((
                    chain(&[&mset_map(&acc1(&i.x)?, i.k), &mu_kernel(&i.x, i.k, 1)])?,
                    id(&ms(&i.x, i.k)),
                ))
            },
        ),
        law(
            "Thm7.3.assoc",
            "μ_{K,LN}∘M[K](μ_{L,N}) = μ_{KL,N}∘μ_{K,L}",
            &[X, K, L, N],
            always,
            |i, _| {
                let (x, k, l, n) = (&i.x, i.k, i.l, i.n);
                Ok((
                    chain(&[&mset_map(&mu_kernel(x, l, n), k), &mu_kernel(x, k, l * n)])?,
                    chain(&[&mu_kernel(&ms(x, n), k, l), &mu_kernel(x, k * l, n)])?,
                ))
            },
        ),
        law(
            "Thm7.3.mu-det",
            "(μ⊗μ)∘δ = δ∘μ",
            &[X, K, L],
            always,
            |i, _| det_pair(&mu_kernel(&i.x, i.k, i.l)),
        ),
        // ---- zips ---------------------------------------------------------
        law(
            "Prop7.5.natural",
            "mzip∘(M[K](f)⊗M[K](g)) = M[K](f⊗g)∘mzip",
            &[X, Y, F, G, K],
            always,
            |i, o| {
                Ok((
                    chain(&[
                        &tensor(&mset_map(&i.f, i.k), &mset_map(&i.g, i.k)),
                        &o.mzip(&i.y, &i.x, i.k),
                    ])?,
                    chain(&[
                        &o.mzip(&i.x, &i.y, i.k),
                        &mset_map(&tensor(&i.f, &i.g), i.k),
                    ])?,
                ))
            },
        ),
        law(
            "Prop7.5.arr",
            "arr∘mzip = zip∘(arr⊗arr)",
            &[X, Y, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mzip(&i.x, &i.y, i.k), &o.arr(&prod(&i.x, &i.y), i.k)])?,
                    chain(&[
                        &tensor(&o.arr(&i.x, i.k), &o.arr(&i.y, i.k)),
                        &zip_iso(&i.x, &i.y, i.k),
                    ])?,
                ))
            },
        ),
        law(
            "Prop7.5.assoc",
            "M[K](α)∘mzip∘(mzip⊗id) = mzip∘(id⊗mzip)∘α",
            &[X, Y, K],
            always,
            |i, o| {
                let (x, y, z, k) = (&i.x, &i.y, &i.x, i.k);
                let (mx, my, mz) = (ms(x, k), ms(y, k), ms(z, k));
                let xy = prod(x, y);
                let yz = prod(y, z);
                let alpha = ri(&prod(&xy, z), &prod(x, &yz))?;
                Ok((
                    chain(&[
                        &tensor(&o.mzip(x, y, k), &id(&mz)),
                        &o.mzip(&xy, z, k),
                        &mset_map(&alpha, k),
                    ])?,
                    chain(&[
                        &ri(&prod(&prod(&mx, &my), &mz), &prod(&mx, &prod(&my, &mz)))?,
                        &tensor(&id(&mx), &o.mzip(y, z, k)),
                        &o.mzip(x, &yz, k),
                    ])?,
                ))
            },
        ),
        law(
            "Prop7.5.unit",
            "M[K](ρ)∘mzip∘(id⊗u) = id",
            &[X, K],
            always,
            |i, o| {
                let (x, k) = (&i.x, i.k);
                let one = FinSet::unit();
                let mx = ms(x, k);
                Ok((
                    chain(&[
                        &ri(&mx, &prod(&mx, &one))?,
                        &tensor(&id(&mx), &unit_iso(k)),
                        &o.mzip(x, &one, k),
                        &mset_map(&ri(&prod(x, &one), x)?, k),
                    ])?,
                    id(&mx),
                ))
            },
        ),
        law(
            "Prop7.5.proj1",
            "M[K](π₁)∘mzip = π₁",
            &[X, Y, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mzip(&i.x, &i.y, i.k), &mset_map(&fst(&i.x, &i.y), i.k)])?,
                    fst(&ms(&i.x, i.k), &ms(&i.y, i.k)),
                ))
            },
        ),
        law(
            "Prop7.5.proj2",
            "M[K](π₂)∘mzip = π₂",
            &[X, Y, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mzip(&i.x, &i.y, i.k), &mset_map(&snd(&i.x, &i.y), i.k)])?,
                    snd(&ms(&i.x, i.k), &ms(&i.y, i.k)),
                ))
            },
        ),
        law(
            "Prop7.5.dd",
            "DD∘mzip = mzip∘(DD⊗DD)",
            &[X, Y, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mzip(&i.x, &i.y, i.k + 1), &o.dd(&prod(&i.x, &i.y), i.k)])?,
                    chain(&[
                        &tensor(&o.dd(&i.x, i.k), &o.dd(&i.y, i.k)),
                        &o.mzip(&i.x, &i.y, i.k),
                    ])?,
                ))
            },
        ),
        // ---- multinomial and hypergeometric -------------------------------
        law(
            "Def8.1.mn-closed",
            "acc∘f^K∘δ[K] = closed-form multinomial",
            &[X, Y, F, K],
            always,
            |i, o| Ok((o.mn(&i.f, i.k), multinomial_closed_form(&i.f, i.k))),
        ),
        law(
            "Def8.1.hg-closed",
            "DD∘…∘DD = closed-form hypergeometric",
            &[X, K, Urn],
            urn,
            |i, o| {
                Ok((
                    o.hg(&i.x, i.l, i.k)?,
                    hypergeometric_kernel(&i.x, i.l, i.k)?,
                ))
            },
        ),
        law(
            "Thm8.2.arr",
            "arr∘mn[K](f) = f^K∘δ[K]",
            &[X, Y, F, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mn(&i.f, i.k), &o.arr(&i.y, i.k)])?,
                    chain(&[&copy_kernel(&i.x, i.k), &power(&i.f, i.k)])?,
                ))
            },
        ),
        law(
            "Thm8.2.flrn",
            "Flrn∘mn[K](f) = f",
            &[X, Y, F, K],
            k_pos,
            |i, o| {
                Ok((
                    chain(&[&o.mn(&i.f, i.k), &flrn_kernel(&i.y, i.k)?])?,
                    i.f.clone(),
                ))
            },
        ),
        law(
            "Thm8.2.dd",
            "DD∘mn[K+1](f) = mn[K](f)",
            &[X, Y, F, K],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mn(&i.f, i.k + 1), &o.dd(&i.y, i.k)])?,
                    o.mn(&i.f, i.k),
                ))
            },
        ),
        law(
            "Thm8.2.mu",
            "μ∘mn[K](mn[L](f)) = mn[KL](f)",
            &[X, Y, F, K, L],
            always,
            |i, o| {
                Ok((
                    chain(&[&o.mn(&o.mn(&i.f, i.l), i.k), &mu_kernel(&i.y, i.k, i.l)])?,
                    o.mn(&i.f, i.k * i.l),
                ))
            },
        ),
        law(
            "Thm8.2.sum",
            "+∘(mn[K](f)⊗mn[L](f))∘δ = mn[K+L](f)",
            &[X, Y, F, K, L],
            always,
            |i, o| {
                Ok((
                    chain(&[
                        &copy_pair(&i.x),
                        &tensor(&o.mn(&i.f, i.k), &o.mn(&i.f, i.l)),
                        &msum_kernel(&i.y, i.k, i.l),
                    ])?,
                    o.mn(&i.f, i.k + i.l),
                ))
            },
        ),
        law(
            "Thm8.2.multizip",
            "mzip∘(mn⊗mn)",
            &[X, Y, F, G, K],
            always,
            |i, o| {
                Ok((
                    chain(&[
                        &tensor(&o.mn(&i.f, i.k), &o.mn(&i.g, i.k)),
                        &o.mzip(&i.y, &i.x, i.k),
                    ])?,
                    o.mn(&tensor(&i.f, &i.g), i.k),
                ))
            },
        ),
        law(
            "Thm8.3.mn",
            "hg[L,K]∘mn[L](f) = mn[K](f)",
            &[X, Y, F, K, Urn],
            urn,
            |i, o| {
                Ok((
                    chain(&[&o.mn(&i.f, i.l), &o.hg(&i.y, i.l, i.k)?])?,
                    o.mn(&i.f, i.k),
                ))
            },
        ),
        law(
            "Thm8.3.flrn",
            "Flrn∘hg[L,K] = Flrn",
            &[X, K, Urn],
            urn_k_pos,
            |i, o| {
                Ok((
                    chain(&[&o.hg(&i.x, i.l, i.k)?, &flrn_kernel(&i.x, i.k)?])?,
                    flrn_kernel(&i.x, i.l)?,
                ))
            },
        ),
        law(
            "Thm8.3.mzip",
            "hg∘mzip = mzip∘(hg⊗hg)",
            &[X, Y, K, Urn],
            urn,
            |i, o| {
                Ok((
                    chain(&[
                        &o.mzip(&i.x, &i.y, i.l),
                        &o.hg(&prod(&i.x, &i.y), i.l, i.k)?,
                    ])?,
                    chain(&[
                        &tensor(&o.hg(&i.x, i.l, i.k)?, &o.hg(&i.y, i.l, i.k)?),
                        &o.mzip(&i.x, &i.y, i.k),
                    ])?,
                ))
            },
        ),
        // ---- splitting ----------------------------------------------------
        law(
            "Eq5.lsplit-left",
            "lsplit⁻¹∘lsplit = id",
            &[X, Y, K],
            always,
            |i, _| {
                let l = lsplit(&i.x, &i.y, i.k);
                Ok((chain(&[&l, &lsplit_inv(&i.x, &i.y, i.k)])?, id(l.dom())))
            },
        ),
        law(
            "Eq5.lsplit-right",
            "lsplit∘lsplit⁻¹ = id",
            &[X, Y, K],
            always,
            |i, _| {
                let l = lsplit(&i.x, &i.y, i.k);
                Ok((chain(&[&lsplit_inv(&i.x, &i.y, i.k), &l])?, id(l.cod())))
            },
        ),
        law(
            "LemA.1.collapse",
            "accs∘lsplit = ⊕((acc⊗acc)∘∇)∘lsplit",
            &[X, Y, K],
            always,
            |i, _| {
                let (x, y, k) = (&i.x, &i.y, i.k);
                let l = lsplit(x, y, k);
                let legs = (0..=k)
                    .map(|j| {
                        let piece = prod(&pw(x, j), &pw(y, k - j));
                        let copies = l.cod().as_coproduct().expect("coproduct")[j]
                            .as_coproduct()
                            .expect("copower")
                            .len();
                        let fold = cotuple(&vec![id(&piece); copies])?;
                        compose(&tensor(&acc_kernel(x, j), &acc_kernel(y, k - j)), &fold)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((
                    chain(&[&l, &accs_kernel(x, y, k)])?,
                    chain(&[&l, &coproduct_map(&legs)])?,
                ))
            },
        ),
        law(
            "LemA.1.perm",
            "accs∘lsplit∘σ = accs∘lsplit",
            &[X, Y, K, Sigma],
            always,
            |i, _| {
                let (x, y, k) = (&i.x, &i.y, i.k);
                let xy = FinSet::coproduct(&[x.clone(), y.clone()]);
                let al = chain(&[&lsplit(x, y, k), &accs_kernel(x, y, k)])?;
                Ok((chain(&[&permutation_kernel(&xy, &i.sigma), &al])?, al))
            },
        ),
        law(
            "Eq6.msplit-acc",
            "msplit∘acc = accs∘lsplit",
            &[X, Y, K],
            always,
            |i, _| {
                let (x, y, k) = (&i.x, &i.y, i.k);
                let xy = FinSet::coproduct(&[x.clone(), y.clone()]);
                Ok((
                    chain(&[&acc_kernel(&xy, k), &msplit(x, y, k)])?,
                    chain(&[&lsplit(x, y, k), &accs_kernel(x, y, k)])?,
                ))
            },
        ),
        law(
            "Eq7.inverse-left",
            "msplit⁻¹∘msplit = id",
            &[X, Y, K],
            always,
            |i, _| {
                let m = msplit(&i.x, &i.y, i.k);
                Ok((chain(&[&m, &msplit_inv(&i.x, &i.y, i.k)?])?, id(m.dom())))
            },
        ),
        law(
            "Eq7.inverse-right",
            "msplit∘msplit⁻¹ = id",
            &[X, Y, K],
            always,
            |i, _| {
                let m = msplit(&i.x, &i.y, i.k);
                Ok((chain(&[&msplit_inv(&i.x, &i.y, i.k)?, &m])?, id(m.cod())))
            },
        ),
        law(
            "Eq7.msplit-det",
            "(msplit⊗msplit)∘δ = δ∘msplit",
            &[X, Y, K],
            always,
            |i, _| det_pair(&msplit(&i.x, &i.y, i.k)),
        ),
    ]
}
