use gaussmix::sweeps::{Family, ImbalanceSpan, Range, Scale, ScatterReference};

pub fn photons(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err("photon numbers must be finite and nonnegative".into())
    }
}

pub fn transmissivity(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err("transmissivity must lie in [0, 1]".into())
    }
}

/// `MIN:MAX:COUNT` or `MIN:MAX:COUNT:log`.
pub fn range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err("expected MIN:MAX:COUNT or MIN:MAX:COUNT:log".into());
    }
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| format!("`{p}` is not a number"))
    };
    let count = parts[2]
        .parse::<usize>()
        .map_err(|_| format!("`{}` is not a point count", parts[2]))?;
    let scale = match parts.get(3) {
        None | Some(&"lin") | Some(&"linear") => Scale::Linear,
        Some(&"log") => Scale::Log,
        Some(other) => return Err(format!("unknown scale `{other}`, use lin or log")),
    };
    let r = Range {
        min: num(parts[0])?,
        max: num(parts[1])?,
        count,
        scale,
    };
    r.validate("range").map_err(|e| e.to_string())?;
    Ok(r)
}

pub fn family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|_| "expected thermal, squeezed-vacuum or threshold".into())
}

pub fn reference(s: &str) -> Result<ScatterReference, String> {
    match s {
        "vacuum" | "0" => Ok(ScatterReference::Vacuum),
        "random" => Ok(ScatterReference::Random),
        _ => Err("expected vacuum or random".into()),
    }
}

pub fn span(s: &str) -> Result<ImbalanceSpan, String> {
    match s {
        "full" => Ok(ImbalanceSpan::Full),
        "nonnegative" => Ok(ImbalanceSpan::Nonnegative),
        _ => Err("expected full or nonnegative".into()),
    }
}

/// `x` to 12 significant digits; fixed notation for moderate magnitudes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-4..12).contains(&e) {
        let decimals = (11 - e) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}
