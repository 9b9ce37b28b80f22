use rayon::prelude::*;

use super::{s_max_for, Context, GraphSource, SuiteId, SuiteSpec};
use crate::betti::{graded_betti, hochster_oracle, regularity, EngineConfig};
use crate::canon::subsets_of_size;
use crate::error::EngineError;
use crate::even::{
    colon_graph_mismatch, colon_structure, isolated_reduction_check, leaf_reduction_sides,
    longest_endpoints, vertex_colon_sides, EdgeMultiset,
};
use crate::graph::{Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::homology::FieldSpec;
use crate::invariants::{check_hierarchy_function, matching_number};
use crate::monomial::{
    edge_ideal, symbolic_square, symbolic_square_by_covers, Monomial, MonomialIdeal,
};
use crate::report::{SuiteReport, Violation};

/// `2K_2` joined with `K_6`: locally linear, not gap-free.
pub fn join_fixture() -> Graph {
    let gap = Graph::complete(2).disjoint_union(&Graph::complete(2));
    gap.join(&Graph::complete(6))
}

struct Checker<'a> {
    report: &'a mut SuiteReport,
    code: String,
}

impl Checker<'_> {
    fn check(
        &mut self,
        ok: bool,
        s: Option<u32>,
        lhs: i64,
        rhs: i64,
        context: impl FnOnce() -> String,
    ) {
        let code = &self.code;
        self.report.check(ok, || Violation {
            graph6: code.clone(),
            s,
            lhs,
            rhs,
            context: context(),
        });
    }

    /// `lhs <= rhs`.
    fn le(&mut self, s: Option<u32>, lhs: u32, rhs: i64, what: &str) {
        self.check((lhs as i64) <= rhs, s, lhs as i64, rhs, || what.to_string());
    }

    fn eq(&mut self, s: Option<u32>, lhs: u32, rhs: i64, what: &str) {
        self.check(lhs as i64 == rhs, s, lhs as i64, rhs, || what.to_string());
    }

    fn holds(&mut self, ok: bool, s: Option<u32>, what: impl FnOnce() -> String) {
        self.check(ok, s, !ok as i64, 0, what);
    }
}

pub(super) fn run(spec: &SuiteSpec, ctx: &Context, graphs: &[Graph]) -> SuiteReport {
    let id = spec.suite;
    let mut report = match id {
        SuiteId::HierarchyMatching | SuiteId::HierarchyLocallyLinear => {
            hierarchy(spec, ctx, graphs)
        }
        _ => graphs
            .par_iter()
            .map(|g| one_graph(spec, ctx, g))
            .reduce(|| SuiteReport::new(id.as_str()), SuiteReport::merge),
    };
    if id == SuiteId::LocallyLinear && matches!(spec.graphs, GraphSource::Enumerate { .. }) {
        let mut extra = SuiteReport::new(id.as_str());
        extra.graphs_tested = 1;
        guarded(&mut extra, &join_fixture(), |c| join_example(ctx, c));
        report = report.merge(extra);
    }
    report
}

fn guarded(
    report: &mut SuiteReport,
    g: &Graph,
    body: impl FnOnce(&mut Checker) -> Result<(), EngineError>,
) {
    let code = emit_graph6(g);
    let mut c = Checker {
        report,
        code: code.clone(),
    };
    if let Err(e) = body(&mut c) {
        report.skipped += 1;
        report.note(format!("skipped {code}: {e}"));
    }
}

fn one_graph(spec: &SuiteSpec, ctx: &Context, g: &Graph) -> SuiteReport {
    let mut report = SuiteReport::new(spec.suite.as_str());
    report.graphs_tested = 1;
    let s_max = s_max_for(&spec.bands, g.n());
    guarded(&mut report, g, |c| match spec.suite {
        SuiteId::LowerBound => lower_bound(ctx, g, s_max, c),
        SuiteId::MatchingBound => matching_bound(ctx, g, s_max, c),
        SuiteId::CameronWalker => cameron_walker(ctx, g, s_max, c),
        SuiteId::LocallyLinear => locally_linear(ctx, g, s_max, c),
        SuiteId::GapfreeLocal => gapfree_local(ctx, g, s_max, c),
        SuiteId::GapfreeLocallyLinear => gapfree_locally_linear(ctx, g, s_max, c),
        SuiteId::Square => square(ctx, g, s_max, c),
        SuiteId::SymbolicSquare => symbolic(ctx, g, s_max, c),
        SuiteId::ColonInduction => colon_induction(ctx, g, s_max, c),
        SuiteId::ColonStructure => colon_lemma(g, s_max, c),
        SuiteId::EvenConnection => even_connection(g, s_max, c),
        SuiteId::IsolatedReduction => isolated_reduction(ctx, g, s_max, c),
        SuiteId::Froberg => froberg(ctx, g, c),
        SuiteId::BettiOracle => betti_oracle(ctx, g, s_max, c),
        SuiteId::InducedMonotonicity => induced_monotonicity(ctx, g, c),
        SuiteId::ExactSequence => exact_sequence(ctx, g, s_max, c),
        SuiteId::ConjectureA => conjecture_a(ctx, g, s_max, c),
        SuiteId::ConjectureAPrime => conjecture_a_prime(ctx, g, s_max, c),
        SuiteId::HierarchyMatching | SuiteId::HierarchyLocallyLinear => unreachable!(),
    });
    report
}

fn lower_bound(ctx: &Context, g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let nu = ctx.facts(g)?.nu as i64;
    for s in 1..=s_max {
        let reg = ctx.reg_power(g, s)?;
        let bound = 2 * s as i64 + nu - 1;
        c.check(reg as i64 >= bound, Some(s), reg as i64, bound, || {
            "reg I^s >= 2s + nu - 1".into()
        });
    }
    Ok(())
}

fn matching_bound(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let beta = ctx.facts(g)?.beta as i64;
    for s in 1..=s_max {
        c.le(
            Some(s),
            ctx.reg_power(g, s)?,
            2 * s as i64 + beta - 1,
            "reg I^s <= 2s + beta - 1",
        );
    }
    Ok(())
}

fn cameron_walker(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    let f = ctx.facts(g)?;
    if !g.has_edges() || f.nu != f.beta {
        return Ok(());
    }
    for s in 1..=s_max {
        c.eq(
            Some(s),
            ctx.reg_power(g, s)?,
            2 * s as i64 + f.nu as i64 - 1,
            "reg I^s = 2s + nu - 1",
        );
    }
    Ok(())
}

fn locally_linear(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let f = ctx.facts(g)?;
    // complement triangle-free, i.e. no independent triple
    if !subsets_of_size(g.n(), 3).any(|t| g.is_independent(t)) {
        c.le(
            None,
            f.local_max,
            2,
            "complement triangle-free => locally linear",
        );
    }
    if f.local_max > 2 {
        return Ok(());
    }
    let reg = ctx.reg(g)? as i64;
    c.le(None, reg as u32, 3, "locally linear => reg I <= 3");
    for s in 1..=s_max {
        c.le(
            Some(s),
            ctx.reg_power(g, s)?,
            2 * s as i64 + reg - 2,
            "reg I^s <= 2s + reg I - 2",
        );
    }
    Ok(())
}

fn join_example(ctx: &Context, c: &mut Checker) -> Result<(), EngineError> {
    let g = join_fixture();
    let f = ctx.facts(&g)?;
    c.le(None, f.local_max, 2, "join fixture is locally linear");
    c.holds(!f.gap_free, None, || "join fixture is not gap-free".into());
    for s in 1..=2 {
        let reg = ctx.reg_power(&g, s)?;
        c.le(
            Some(s),
            reg,
            2 * s as i64 + 1,
            "join fixture: reg I^s <= 2s + 1",
        );
        c.holds(reg != 2 * s, Some(s), || {
            format!("join fixture: reg I^s = {reg} != 2s")
        });
    }
    Ok(())
}

fn gapfree_local(ctx: &Context, g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    let f = ctx.facts(g)?;
    if !g.has_edges() || !f.gap_free {
        return Ok(());
    }
    let r = (f.local_max + 1).max(3) as i64;
    for s in 1..=s_max {
        c.le(
            Some(s),
            ctx.reg_power(g, s)?,
            2 * s as i64 + r - 2,
            "gap-free: reg I^s <= 2s + r - 2",
        );
    }
    Ok(())
}

fn gapfree_locally_linear(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    let f = ctx.facts(g)?;
    if !g.has_edges() || !f.gap_free {
        return Ok(());
    }
    if f.cricket_free {
        c.le(
            None,
            f.local_max,
            2,
            "gap-free and cricket-free => locally linear",
        );
    }
    if f.local_max <= 2 {
        for s in 2..=s_max {
            c.eq(
                Some(s),
                ctx.reg_power(g, s)?,
                2 * s as i64,
                "gap-free locally linear: reg I^s = 2s",
            );
        }
    }
    Ok(())
}

fn square(ctx: &Context, g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    if !g.has_edges() || s_max < 2 {
        return Ok(());
    }
    let h = g.without_isolated().graph;
    let r = ctx.facts(g)?.local_max as i64 + 1;
    let sq = edge_ideal(&h).power(2)?;
    for e in h.edges() {
        let colon = sq.colon(&Monomial::of_edge(h.n(), e));
        let reg = regularity(&colon, ctx.config())?;
        c.le(Some(2), reg, r, &format!("reg (I^2 : {e}) <= r"));
    }
    c.le(Some(2), ctx.reg_power(g, 2)?, r + 2, "reg I^2 <= r + 2");
    Ok(())
}

fn symbolic(ctx: &Context, g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    let formula = symbolic_square(g);
    let oracle = symbolic_square_by_covers(g);
    c.holds(formula == oracle, Some(2), || {
        format!("I^(2) formula {formula:?} != intersection {oracle:?}")
    });
    if g.has_edges() && s_max >= 2 {
        let h = g.without_isolated().graph;
        let r = ctx.facts(g)?.local_max as i64 + 1;
        let reg = regularity(&symbolic_square(&h), ctx.config())?;
        c.le(Some(2), reg, r + 2, "reg I^(2) <= r + 2");
    }
    Ok(())
}

fn colon_induction(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let h = g.without_isolated().graph;
    let i = edge_ideal(&h);
    for s in 1..s_max {
        let next = i.power(s + 1)?;
        let mut rhs = ctx.reg_power(g, s)? as i64;
        for m in i.power(s)?.generators() {
            rhs = rhs.max(regularity(&next.colon(m), ctx.config())? as i64 + 2 * s as i64);
        }
        c.le(
            Some(s + 1),
            ctx.reg_power(g, s + 1)?,
            rhs,
            "reg I^{s+1} <= max(reg (I^{s+1} : m) + 2s, reg I^s)",
        );
    }
    Ok(())
}

fn colon_lemma(g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    for s in 2..=s_max {
        for m in EdgeMultiset::all_of_size(g, s as usize - 1) {
            if let Some((lhs, rhs)) = leaf_reduction_sides(g, &m) {
                c.holds(lhs == rhs, Some(s), || {
                    format!("leaf reduction fails for {:?}", m.edges())
                });
            }
            for w in 0..g.n() {
                if let Some((lhs, rhs)) = vertex_colon_sides(g, &m, w, false) {
                    c.holds(lhs == rhs, Some(s), || {
                        format!("J:{w} identity fails for {:?}", m.edges())
                    });
                }
            }
            for (e, _) in m.distinct() {
                for w in g.closed_neighborhood(&e).expect("edge of g") {
                    let st = colon_structure(g, &m, e, w).expect("w in N[e]");
                    c.holds(st.lower && st.upper && st.induced, Some(s), || {
                        format!(
                            "colon structure at w={w}, e1={e}, m={:?}: {st:?}",
                            m.edges()
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

fn even_connection(g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    for s in 1..=s_max {
        for m in EdgeMultiset::all_of_size(g, s as usize) {
            let bad = colon_graph_mismatch(g, &m);
            c.holds(bad.is_none(), Some(s), || {
                format!("m = {:?}: {}", m.edges(), bad.unwrap_or_default())
            });
        }
    }
    Ok(())
}

fn isolated_reduction(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    if !ctx.facts(g)?.gap_free {
        return Ok(());
    }
    let ws: Vec<VertexSet> = std::iter::once(VertexSet::EMPTY)
        .chain((0..g.n()).map(VertexSet::singleton))
        .collect();
    for s in 2..=s_max {
        for m in EdgeMultiset::all_of_size(g, s as usize - 1) {
            for &w in &ws {
                let ends = longest_endpoints(g, &m, w);
                if ends.is_empty() {
                    c.holds(true, Some(s), String::new);
                }
                for u in ends {
                    let ok = isolated_reduction_check(g, &m, w, u)?;
                    c.holds(ok, Some(s), || {
                        format!(
                            "G' - W - N[{u}] has a new edge; m = {:?}, W = {:?}",
                            m.edges(),
                            w.iter().collect::<Vec<_>>()
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

fn froberg(ctx: &Context, g: &Graph, c: &mut Checker) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let reg = ctx.reg(g)?;
    let co = ctx.facts(g)?.co_chordal;
    c.check((reg == 2) == co, None, reg as i64, co as i64, || {
        "reg I = 2 <=> co-chordal".into()
    });
    Ok(())
}

fn betti_oracle(ctx: &Context, g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let i = edge_ideal(&g.without_isolated().graph);
    for s in 1..=s_max.min(2) {
        let p = i.power(s)?;
        let a = graded_betti(&p, ctx.config())?;
        let b = hochster_oracle(&p, ctx.config())?;
        c.holds(a == b, Some(s), || {
            format!(
                "box {:?} vs oracle {:?}",
                a.entries().collect::<Vec<_>>(),
                b.entries().collect::<Vec<_>>()
            )
        });
        // Characteristic dependence is reported, not counted as a violation.
        let other = match ctx.config().homology.field {
            FieldSpec::Zero => FieldSpec::Gf2,
            _ => FieldSpec::Zero,
        };
        let r = regularity(&p, &EngineConfig::with_field(other))?;
        if a.regularity() != Some(r) {
            let text = format!(
                "characteristic-dependent: {} s={s} reg {:?} over {} vs {r} over {}",
                c.code,
                a.regularity(),
                a.field,
                other
            );
            c.report.note(text);
        }
    }
    Ok(())
}

fn induced_monotonicity(ctx: &Context, g: &Graph, c: &mut Checker) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let reg = ctx.reg(g)? as i64;
    for v in 0..g.n() {
        let h = g
            .delete_vertices(VertexSet::singleton(v))
            .expect("vertex of g")
            .graph;
        if h.has_edges() {
            c.le(
                None,
                ctx.reg(&h)?,
                reg,
                &format!("reg I(G - {v}) <= reg I(G)"),
            );
        }
    }
    Ok(())
}

fn exact_sequence(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let h = g.without_isolated().graph;
    let n = h.n();
    let cfg = ctx.config();
    for s in 1..=s_max {
        let i = edge_ideal(&h).power(s)?;
        let reg_i = ctx.reg_power(g, s)?;
        let sides = |m: &Monomial| -> Result<(u32, u32), EngineError> {
            let colon: MonomialIdeal = i.colon(m);
            Ok((
                regularity(&colon, cfg)? + m.degree(),
                regularity(&i.add_generator(m.clone()), cfg)?,
            ))
        };
        for x in 0..n {
            let (a, b) = sides(&Monomial::var(n, x))?;
            c.le(
                Some(s),
                reg_i,
                a.max(b) as i64,
                &format!("reg I <= max(reg (I : x{x}) + 1, reg (I, x{x}))"),
            );
            c.holds(reg_i == a || reg_i == b, Some(s), || {
                format!("reg I = {reg_i} equals neither {a} nor {b} for x{x}")
            });
        }
        if s >= 2 {
            for e in h.edges() {
                let (a, b) = sides(&Monomial::of_edge(n, e))?;
                c.le(
                    Some(s),
                    reg_i,
                    a.max(b) as i64,
                    &format!("reg I <= max(reg (I : {e}) + 2, reg (I, {e}))"),
                );
            }
        }
    }
    Ok(())
}

fn conjecture_a(ctx: &Context, g: &Graph, s_max: u32, c: &mut Checker) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let reg = ctx.reg(g)? as i64;
    for s in 1..=s_max {
        c.le(
            Some(s),
            ctx.reg_power(g, s)?,
            2 * s as i64 + reg - 2,
            "reg I^s <= 2s + reg I - 2",
        );
    }
    Ok(())
}

fn conjecture_a_prime(
    ctx: &Context,
    g: &Graph,
    s_max: u32,
    c: &mut Checker,
) -> Result<(), EngineError> {
    if !g.has_edges() {
        return Ok(());
    }
    let r = (ctx.facts(g)?.local_max + 1).max(2) as i64;
    for s in 1..=s_max {
        c.le(
            Some(s),
            ctx.reg_power(g, s)?,
            2 * s as i64 + r - 2,
            "reg I^s <= 2s + r - 2",
        );
    }
    Ok(())
}

type GraphFn<'a> = Box<dyn Fn(&Graph) -> u32 + Sync + 'a>;

/// The hypotheses of the hierarchy bound for `f`, then its conclusion
/// `reg I^s <= 2s + f(G) - 2`.
fn hierarchy(spec: &SuiteSpec, ctx: &Context, graphs: &[Graph]) -> SuiteReport {
    let id = spec.suite;
    let (family, f): (Vec<Graph>, GraphFn<'_>) = match id {
        SuiteId::HierarchyMatching => (
            graphs.to_vec(),
            Box::new(|g: &Graph| matching_number(g) as u32 + 1),
        ),
        _ => {
            let family = graphs
                .iter()
                .filter(|g| ctx.facts(g).map(|f| f.local_max <= 2).unwrap_or(false))
                .cloned()
                .collect();
            (family, Box::new(|g: &Graph| ctx.reg(g).unwrap_or(0)))
        }
    };
    let mut report = match check_hierarchy_function(id.as_str(), &family, &*f, ctx.config()) {
        Ok(r) => r,
        Err(e) => {
            let mut r = SuiteReport::new(id.as_str());
            r.skipped += 1;
            r.note(format!("hierarchy check skipped: {e}"));
            r
        }
    };
    let conclusion = family
        .par_iter()
        .map(|g| {
            let mut r = SuiteReport::new(id.as_str());
            if g.has_edges() {
                let fg = f(g) as i64;
                guarded(&mut r, g, |c| {
                    for s in 1..=s_max_for(&spec.bands, g.n()) {
                        c.le(
                            Some(s),
                            ctx.reg_power(g, s)?,
                            2 * s as i64 + fg - 2,
                            "reg I^s <= 2s + f(G) - 2",
                        );
                    }
                    Ok(())
                });
            }
            r
        })
        .reduce(|| SuiteReport::new(id.as_str()), SuiteReport::merge);
    report = report.merge(conclusion);
    report
}

#[cfg(test)]
mod tests {
    use super::super::{run_suite, Context, Mutation, PowerBand, SuiteId, SuiteSpec};
    use super::*;
    use crate::homology::FieldSpec;

    #[test]
    fn every_suite_passes_on_small_graphs() {
        for id in SuiteId::ALL {
            let spec = SuiteSpec::new(id)
                .with_max_vertices(4)
                .with_bands(vec![PowerBand {
                    max_vertices: 4,
                    s_max: 3,
                }]);
            let ctx = Context::new(FieldSpec::Gf2, Mutation::None);
            let r = run_suite(&spec, &ctx).unwrap();
            assert!(r.pass, "{id}: {:?}", r.violations);
            assert_eq!(r.skipped, 0, "{id}: {:?}", r.notes);
            assert!(r.graphs_tested >= 11, "{id}");
        }
    }

    #[test]
    fn lower_bound_examples() {
        let ctx = Context::new(FieldSpec::Gf2, Mutation::None);
        let gap = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!(ctx.reg(&gap).unwrap(), 3);
        assert_eq!(ctx.reg_power(&Graph::complete(2), 3).unwrap(), 6);
        let spec = SuiteSpec::new(SuiteId::LowerBound).with_graphs(vec![gap]);
        let r = run_suite(&spec, &ctx).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks, 3);
    }

    #[test]
    fn nu_mutation_breaks_the_lower_bound() {
        let spec = SuiteSpec::new(SuiteId::LowerBound)
            .with_mutation(Mutation::NuOffByOne)
            .with_graphs(vec![Graph::complete(2)]);
        let out = super::super::run(&[spec]).unwrap();
        assert_eq!(out.exit_code, 1);
        let v = &out.reports[0].violations[0];
        assert_eq!(v.graph6, "A_");
        assert_eq!((v.lhs, v.rhs), (2, 3));
    }

    #[test]
    fn hierarchy_needs_closed_family() {
        let spec = SuiteSpec::new(SuiteId::HierarchyMatching).with_graphs(vec![Graph::cycle(5)]);
        let ctx = Context::new(FieldSpec::Gf2, Mutation::None);
        let r = run_suite(&spec, &ctx).unwrap();
        assert!(r.pass);
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn conjecture_suites_are_labeled() {
        let spec = SuiteSpec::new(SuiteId::ConjectureA).with_graphs(vec![Graph::cycle(5)]);
        let ctx = Context::new(FieldSpec::Gf2, Mutation::None);
        let r = run_suite(&spec, &ctx).unwrap();
        assert!(r.notes.iter().any(|n| n.starts_with("conjecture")));
    }
}
