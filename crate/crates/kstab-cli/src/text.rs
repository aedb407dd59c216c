//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::rat::Rat;
use crate::report::Report;

fn opt(v: &Option<Rat>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), Rat::to_string)
}

pub fn render(r: &Report) -> String {
    let mut s = String::new();
    if let Some(name) = &r.input.name {
        let _ = writeln!(s, "problem: {name}");
    }
    if let Some(v) = &r.variety {
        let _ = writeln!(s, "dim {}  L^n = {}  mu(X,L,T) = {}", v.dim, v.degree, v.slope);
    }
    if let Some(inv) = &r.invariants {
        let _ = writeln!(s, "df_untwisted    {}", inv.df_untwisted);
        let _ = writeln!(s, "df_twisted      {}", opt(&inv.df_twisted));
        let _ = writeln!(s, "df_log          {}", opt(&inv.df_log));
        let _ = writeln!(s, "min_norm        {}", inv.min_norm);
        let routes = &inv.min_norm_routes;
        let _ = writeln!(
            s,
            "  components {}  J_L {}  intersection {}",
            opt(&routes.components),
            opt(&routes.j_l),
            opt(&routes.intersection)
        );
        let _ = writeln!(s, "l2_norm         {}", inv.l2_norm);
        let _ = writeln!(s, "slope (L^r)     {}", inv.slope);
        let _ = writeln!(s, "uniform_margin  {}", opt(&inv.uniform_margin));
        let _ = writeln!(s, "trivial         {}", inv.trivial);
    }
    for c in &r.criteria {
        let _ = writeln!(s, "criterion {}: {}", c.id, c.verdict);
        for ch in &c.checks {
            let mark = if ch.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {}  slack {}", ch.name, opt(&ch.slack));
        }
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(s, "oracle at r = {}: {} rows, all equal: {}", o.r, o.rows.len(), o.all_equal());
        for c in &o.coefficients {
            let _ = writeln!(s, "  {}: {} vs {} ({})", c.name, c.left, c.right, if c.equal { "equal" } else { "DIFFER" });
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    if let Some(e) = &r.error {
        let _ = writeln!(s, "error [{}]: {} (exit {})", e.kind, e.message, e.exit_code);
    }
    s
}
