//! The obstruction ideal `J_p(N)` of a knot complement in a solid torus and
//! its refinement `J⁺_p(N)` in `O⁺`.
//!
//! `N` is the exterior of an unknotted axis `J` in `S³`, surgered along a
//! knot `K`. Generators are pairings of `[N]` with the basis `{v^m}` of the
//! complementary solid torus: `I_p(S³_K(k), J cabled by conj(v^m))`, each
//! computed by expanding `v^m` over colors of `J`.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::{CycloElem, CycloRepr, IdealRing, PrimeContext};
use crate::error::{Error, Result};
use crate::ideal::{IdealLattice, IdealRepr};
use crate::invariants::SurgeryPresentation;
use crate::lattice::Space;
use crate::lollipop::LollipopTree;
use crate::planar::{ColoredDiagram, Component, Morse, Role};
use crate::recoupling::RecouplingTable;

/// A surgery knot `K` with framing `k` in the exterior of an axis `J`.
#[derive(Clone, Debug)]
pub struct KnotInSolidTorus {
    pub diagram: ColoredDiagram,
    /// An edge of the axis `J`.
    pub axis: usize,
    /// An edge of `K`; `None` for the bare solid torus.
    pub surgery: Option<usize>,
    pub framing: i64,
}

fn find_component(d: &ColoredDiagram, name: &str, role: Role) -> Result<usize> {
    d.components
        .iter()
        .find(|c| c.name.as_deref() == Some(name) || (c.name.is_none() && c.role == role))
        .map(|c| c.edge)
        .ok_or_else(|| Error::Diagram(format!("no component named {name}")))
}

impl KnotInSolidTorus {
    /// Read a diagram and pick the axis and surgery knot by component name.
    pub fn from_diagram(d: ColoredDiagram, axis: &str, surgery: &str, framing: i64) -> Result<KnotInSolidTorus> {
        let axis = find_component(&d, axis, Role::Axis)?;
        let knot = find_component(&d, surgery, Role::Surgery)?;
        if d.component_of(axis)?.edges.contains(&knot) {
            return Err(Error::Diagram("axis and surgery knot are the same component".into()));
        }
        let mut diagram = d;
        diagram.components.clear();
        Ok(KnotInSolidTorus { diagram, axis, surgery: Some(knot), framing })
    }

    pub fn parse(text: &str, axis: &str, surgery: &str, framing: i64) -> Result<KnotInSolidTorus> {
        KnotInSolidTorus::from_diagram(ColoredDiagram::parse(text)?, axis, surgery, framing)
    }

    /// The bundled L9a12 diagram with axis `J` and surgery knot `K`.
    pub fn l9a12(framing: i64) -> KnotInSolidTorus {
        KnotInSolidTorus::parse(L9A12, "J", "K", framing).expect("bundled diagram parses")
    }

    /// The solid torus itself: an unknotted axis and no surgery.
    pub fn solid_torus() -> KnotInSolidTorus {
        let mut m = Morse::new();
        m.cup(0, 1, None).cap(0);
        let diagram = m.finish();
        let axis = diagram.arcs().expect("unknot").into_iter().next().expect("one arc").edges[0];
        KnotInSolidTorus { diagram, axis, surgery: None, framing: 0 }
    }

    /// The mirror image, keeping the framing integer unchanged.
    pub fn mirror(&self) -> KnotInSolidTorus {
        let mut m = self.clone();
        for x in m.diagram.crossings.iter_mut() {
            *x = [x[0], x[3], x[2], x[1]];
        }
        m
    }

    pub fn with_framing(&self, framing: i64) -> KnotInSolidTorus {
        KnotInSolidTorus { framing, ..self.clone() }
    }

    /// Surgery presentation with the axis colored `c`.
    fn presentation(&self, c: i64) -> Result<SurgeryPresentation> {
        let mut d = self.diagram.clone();
        d.recolor_component(self.axis, c)?;
        if let Some(k) = self.surgery {
            d.recolor_component(k, 1)?;
            d.components.push(Component { edge: k, framing: Some(self.framing), role: Role::Surgery, name: None });
        }
        Ok(SurgeryPresentation::new(d))
    }
}

/// The L9a12 data file.
pub const L9A12: &str = include_str!("../data/L9a12.pd");

/// `I_p(S³_K(k), J colored c)` for `c < d`, with `ω` and `D` rescaled by
/// `d_sign`.
pub fn axis_color_values(n: &KnotInSolidTorus, table: &RecouplingTable, d_sign: i64) -> Result<Vec<CycloElem>> {
    let ctx = table.ctx();
    let s = ctx.int(d_sign);
    let omega: Vec<CycloElem> = table.omega()?.coords.iter().map(|c| &s * c).collect();
    let unknot = |positive: bool| -> Result<CycloElem> {
        let mut acc = ctx.zero();
        for (k, c) in omega.iter().enumerate() {
            let mu = table.twist(k as i64)?.powi(if positive { 1 } else { -1 })?;
            acc = &acc + &(&(c * &mu) * &table.loop_value(k as i64)?);
        }
        Ok(acc)
    };
    let norm = match n.surgery {
        None => ctx.one(),
        Some(_) => match n.framing.signum() {
            1 => unknot(true)?,
            -1 => unknot(false)?,
            _ => ctx.one(),
        },
    };
    if norm.is_zero() {
        return Err(Error::DivisionByZero);
    }
    (0..ctx.d() as i64)
        .into_par_iter()
        .map(|c| {
            let pres = n.presentation(c)?;
            let raw = match n.surgery {
                None => pres.link.bracket(ctx)?,
                Some(k) => {
                    let mut acc = ctx.zero();
                    for (j, w) in omega.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        let mut g = pres.link.clone();
                        g.recolor_component(k, j as i64)?;
                        acc = &acc + &(w * &g.bracket(ctx)?);
                    }
                    acc
                }
            };
            raw.checked_div(&norm)
        })
        .collect()
}

/// The generators `([N], b′_m)` for the basis `b′_m = v^m` of the
/// complementary solid torus, with `D` taken with sign `d_sign`.
pub fn fkb_generators_signed(n: &KnotInSolidTorus, table: &RecouplingTable, d_sign: i64) -> Result<Vec<CycloElem>> {
    let ctx = table.ctx();
    let space = Space::new(&LollipopTree::torus(), ctx)?;
    let values = axis_color_values(n, table, d_sign)?;
    let colors: Vec<usize> = space.colorings.iter().map(|c| c.loop_colors()[0] as usize).collect();
    let gens: Vec<CycloElem> = space
        .basis_b()?
        .iter()
        .map(|b| {
            b.coords
                .iter()
                .zip(&colors)
                .fold(ctx.zero(), |acc, (x, &c)| &acc + &(&x.conj() * &values[c]))
        })
        .collect();
    for g in &gens {
        if !g.in_o() {
            return Err(Error::NotInRing(g.to_string()));
        }
    }
    Ok(gens)
}

pub fn fkb_generators(n: &KnotInSolidTorus, table: &RecouplingTable) -> Result<Vec<CycloElem>> {
    fkb_generators_signed(n, table, 1)
}

/// Multiply a generator by a power of `i` so it lands in `O⁺`. For
/// `p ≡ 1 (mod 4)` every generator lies in `O⁺ ∪ i·O⁺`; anything else is an
/// error.
pub fn twist_into_oplus(ctx: &PrimeContext, g: &CycloElem) -> Result<CycloElem> {
    if g.in_o_plus() {
        return Ok(g.clone());
    }
    if ctx.p() % 4 == 1 {
        let t = &ctx.i().powi(-1)? * g;
        if t.in_o_plus() {
            return Ok(t);
        }
    }
    Err(Error::NotInRing(format!("{g} is in neither O⁺ nor i·O⁺")))
}

/// `J_p(N)` in `O`, or `J⁺_p(N)` in `O⁺` when `plus`.
pub fn ideal_from_generators(ctx: &PrimeContext, gens: &[CycloElem], plus: bool) -> Result<IdealLattice> {
    if plus {
        let tw: Vec<CycloElem> = gens.iter().map(|g| twist_into_oplus(ctx, g)).collect::<Result<_>>()?;
        IdealLattice::from_generators(ctx, &tw, IdealRing::OPlus)
    } else {
        IdealLattice::from_generators(ctx, gens, IdealRing::O)
    }
}

pub fn fkb_ideal(n: &KnotInSolidTorus, table: &RecouplingTable, plus: bool) -> Result<IdealLattice> {
    ideal_from_generators(table.ctx(), &fkb_generators(n, table)?, plus)
}

/// True when `m_value` lies outside the ideal, so `N` does not embed in a
/// manifold with that invariant.
pub fn embedding_obstruction(ideal: &IdealLattice, m_value: &CycloElem) -> bool {
    !ideal.contains(m_value)
}

/// The principal ideal `(1 + 2ζ_p³)` of `O⁺`.
pub fn one_plus_two_zeta_cubed(ctx: &PrimeContext) -> IdealLattice {
    let g = &ctx.one() + &ctx.zeta_pow(3).scale_int(&2.into());
    IdealLattice::from_generators(ctx, &[g], IdealRing::OPlus).expect("element of O⁺")
}

/// Summary of one `J` or `J⁺` computation.
#[derive(Clone, Debug, Serialize)]
pub struct FkbReport {
    pub p: usize,
    pub framing: i64,
    pub plus: bool,
    pub generators: Vec<CycloRepr>,
    pub ideal: IdealRepr,
    pub index: Option<String>,
    pub unit_ideal: bool,
    /// `S³` (invariant 1) is obstructed.
    pub obstructs_s3: bool,
    /// `S¹ × S²` (invariant `D`) is obstructed.
    pub obstructs_s1xs2: bool,
    /// The ideal equals `(1 + 2ζ_p³)`.
    pub equals_one_plus_two_zeta_cubed: bool,
    /// For `p ≡ 1 (mod 4)`: every raw generator lies in `O⁺ ∪ i·O⁺`.
    pub generators_in_oplus_or_i_oplus: bool,
}

pub fn fkb_report(n: &KnotInSolidTorus, table: &RecouplingTable, plus: bool) -> Result<FkbReport> {
    let ctx = table.ctx();
    let gens = fkb_generators(n, table)?;
    let split_ok = gens.iter().all(|g| twist_into_oplus(ctx, g).is_ok());
    let ideal = ideal_from_generators(ctx, &gens, plus)?;
    let s1s2 = if plus { twist_into_oplus(ctx, ctx.d_const()).unwrap_or_else(|_| ctx.d_const().clone()) } else { ctx.d_const().clone() };
    Ok(FkbReport {
        p: ctx.p(),
        framing: n.framing,
        plus,
        generators: gens.iter().map(CycloElem::to_repr).collect(),
        index: ideal.index().map(|i| i.to_string()),
        unit_ideal: ideal.is_unit(),
        obstructs_s3: embedding_obstruction(&ideal, &ctx.one()),
        obstructs_s1xs2: embedding_obstruction(&ideal, &s1s2),
        equals_one_plus_two_zeta_cubed: plus && ideal == one_plus_two_zeta_cubed(ctx),
        generators_in_oplus_or_i_oplus: split_ok,
        ideal: ideal.to_repr(),
    })
}

/// `J ∩ O⁺` by lattice intersection, for comparison with the twisted route.
pub fn fkb_ideal_by_intersection(n: &KnotInSolidTorus, table: &RecouplingTable) -> Result<IdealLattice> {
    Ok(fkb_ideal(n, table, false)?.intersect_oplus(table.ctx()))
}
