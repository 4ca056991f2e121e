use loopdl::braid::{default_dmax, format_set, good_certificate, thm91_hypothesis, twisted_order, Braid};
use loopdl::dlspace::table1::{run_gl3, run_table1};
use loopdl::dlspace::{alpha_invariant, count_points, format_alpha, relpos, xwb_dot_member, xwb_member, CountOptions, Level, Window};
use loopdl::isocrystal::{meets_levi, newton_slopes, LeviShape};
use loopdl::latmat::GLMat;
use loopdl::weyl::format_word;
use loopdl::{Error, Result};
use serde_json::{json, Value};

use crate::config::Effective;
use crate::inputs;

pub fn weyl_classes(cfg: &Effective) -> Result<Value> {
    let sys = inputs::coxeter(cfg)?;
    let classes: Vec<Value> = sys
        .sigma_classes()
        .iter()
        .map(|c| {
            json!({
                "size": c.elements.len(),
                "min_length": c.min_length,
                "cmin": c.cmin.iter().map(|&x| sys.format(x)).collect::<Vec<_>>(),
                "cuspidal": c.cuspidal,
            })
        })
        .collect();
    Ok(json!({ "type": sys.label(), "order": sys.order(), "classes": classes }))
}

pub fn weyl_shift(cfg: &Effective) -> Result<Value> {
    let sys = inputs::coxeter(cfg)?;
    let to = cfg.to.as_deref().ok_or_else(|| Error::Invalid("weyl shift needs --to".into()))?;
    let (a, b) = (sys.parse(&cfg.w)?, sys.parse(to)?);
    let path = sys.cyclic_shift_path(a, b)?.map(|steps| {
        steps
            .iter()
            .map(|s| json!({ "from": sys.format(s.from), "x": sys.format(s.x), "y": sys.format(s.y), "to": sys.format(s.to) }))
            .collect::<Vec<_>>()
    });
    Ok(json!({ "from": sys.format(a), "to": sys.format(b), "connected": path.is_some(), "path": path }))
}

pub fn braid_nf(cfg: &Effective) -> Result<Value> {
    let sys = inputs::coxeter(cfg)?;
    let b = Braid::parse(&sys, &cfg.w)?.pow(&sys, cfg.pow);
    Ok(json!({
        "w": cfg.w,
        "pow": cfg.pow,
        "normal_form": b.format(&sys),
        "factors": b.factors().iter().map(|&x| sys.format(x)).collect::<Vec<_>>(),
        "canonical_length": b.canonical_length(),
        "length": b.length(&sys),
    }))
}

pub fn braid_thm91(cfg: &Effective) -> Result<Value> {
    let sys = inputs::coxeter(cfg)?;
    let w = sys.parse(&cfg.w)?;
    let set = inputs::simple_set(&sys, &cfg.set)?;
    let dmax = cfg.dmax.unwrap_or_else(|| default_dmax(&sys));
    let d = thm91_hypothesis(&sys, w, &set, dmax)?;
    Ok(json!({ "d": d, "w": sys.format(w), "I": format_set(&set), "dmax": dmax }))
}

pub fn braid_good(cfg: &Effective) -> Result<Value> {
    let sys = inputs::coxeter(cfg)?;
    let w = sys.parse(&cfg.w)?;
    let d = cfg.d.unwrap_or_else(|| twisted_order(&sys, w));
    let chain = good_certificate(&sys, w, d);
    Ok(json!({
        "w": sys.format(w),
        "d": d,
        "good": chain.is_some(),
        "chain": chain.map(|c| c.iter().map(format_set).collect::<Vec<_>>()),
    }))
}

fn b_of(cfg: &Effective) -> Result<GLMat> {
    inputs::b_matrix(&inputs::field(cfg)?, cfg.n, &cfg.b)
}

pub fn bg_slopes(cfg: &Effective) -> Result<Value> {
    let b = b_of(cfg)?;
    let c = newton_slopes(&b, cfg.m)?;
    Ok(json!({
        "slopes": c.slopes().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "kappa": c.kappa(),
        "class": c.to_string(),
    }))
}

pub fn bg_meets_levi(cfg: &Effective) -> Result<Value> {
    let c = match inputs::slope_class(cfg.n, &cfg.b)? {
        Some(c) => c,
        None => newton_slopes(&b_of(cfg)?, cfg.m)?,
    };
    let shape = match &cfg.levi {
        Some(l) => inputs::levi(cfg.n, l)?,
        None if cfg.set == "all" => LeviShape::new(vec![cfg.n])?,
        None => {
            let simple: Vec<usize> = loopdl::weyl::parse_word(&cfg.set)?.into_iter().map(|s| s + 1).collect();
            LeviShape::from_simple_set(cfg.n, &simple)
        }
    };
    Ok(json!({ "class": c.to_string(), "levi": shape.blocks, "meets": meets_levi(&c, &shape) }))
}

fn point_arg(cfg: &Effective) -> Result<&str> {
    cfg.point.as_deref().ok_or_else(|| Error::Invalid("this command needs --point".into()))
}

pub fn dl_member(cfg: &Effective) -> Result<Value> {
    let f = inputs::field(cfg)?;
    let b = inputs::b_matrix(&f, cfg.n, &cfg.b)?;
    if let Some(wd) = &cfg.wdot {
        let wdot = GLMat::parse(&f, wd)?;
        let pt = inputs::point(&f, cfg.n, point_arg(cfg)?, Level::UnipQuot)?;
        let v = xwb_dot_member(&pt, &wdot, &b)?;
        return Ok(json!({ "point": pt.label(), "wdot": wdot.to_string(), "member": v }));
    }
    let w = inputs::perm(cfg.n, &cfg.w)?;
    let pt = inputs::point(&f, cfg.n, point_arg(cfg)?, Level::BorelQuot)?;
    let v = xwb_member(&pt, &w, &b)?;
    let pos = relpos(&pt, &b).ok().map(|p| format_word(&p.reduced_word().iter().map(|s| s - 1).collect::<Vec<_>>()));
    Ok(json!({ "point": pt.label(), "w": format_word(&w.reduced_word().iter().map(|s| s - 1).collect::<Vec<_>>()), "member": v, "relative_position": pos }))
}

pub fn dl_count(cfg: &Effective) -> Result<Value> {
    let b = b_of(cfg)?;
    let w = inputs::perm(cfg.n, &cfg.w)?;
    let win = Window::new(cfg.neg, cfg.r, cfg.m)?;
    let opts = CountOptions { budget: cfg.budget, workers: cfg.workers, timing: cfg.timing };
    Ok(serde_json::to_value(count_points(&w, &b, &win, &opts)?).unwrap())
}

pub fn dl_alpha(cfg: &Effective) -> Result<Value> {
    let f = inputs::field(cfg)?;
    let b = inputs::b_matrix(&f, cfg.n, &cfg.b)?;
    let w = inputs::perm(cfg.n, &cfg.w)?;
    let pt = inputs::point(&f, cfg.n, point_arg(cfg)?, Level::BorelQuot)?;
    let a = alpha_invariant(&pt, &w, &b)?;
    Ok(json!({ "point": pt.label(), "alpha": a, "label": format_alpha(&a) }))
}

pub fn dl_check_table1(cfg: &Effective) -> Result<Value> {
    let q = cfg.p.pow(cfg.e0);
    let opts = CountOptions { budget: cfg.budget, workers: cfg.workers, timing: false };
    let rows = run_table1(q, cfg.m, cfg.r, &opts)?;
    let pass = rows.iter().all(|r| r.pass);
    Ok(json!({ "rows": rows, "pass": pass }))
}

pub fn dl_check_gl3(cfg: &Effective) -> Result<Value> {
    if cfg.lo > cfg.hi {
        return Err(Error::Invalid(format!("empty exponent range [{}, {}]", cfg.lo, cfg.hi)));
    }
    let rep = run_gl3(cfg.p.pow(cfg.e0), cfg.m, cfg.lo, cfg.hi)?;
    let pass = rep.violations.is_empty();
    let mut v = serde_json::to_value(rep).unwrap();
    v["pass"] = json!(pass);
    Ok(v)
}
