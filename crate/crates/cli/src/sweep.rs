//! Flag-value grammar: a plain scalar, a comma list `a,b,c`, or an inclusive
//! range `a:b:step`. Every flag that carries numbers accepts all three.

/// Parse an f64 sweep specification.
pub fn parse_f64(spec: &str) -> Result<Vec<f64>, String> {
    parse_with(spec, |tok| {
        tok.parse::<f64>()
            .map_err(|_| format!("'{tok}' is not a number"))
    })
}

/// Parse a u64 sweep specification.
pub fn parse_u64(spec: &str) -> Result<Vec<u64>, String> {
    parse_with(spec, |tok| {
        tok.parse::<u64>()
            .map_err(|_| format!("'{tok}' is not a non-negative integer"))
    })
}

/// Parse a u32 sweep specification (spectrum exponents, powers).
pub fn parse_u32(spec: &str) -> Result<Vec<u32>, String> {
    let wide = parse_u64(spec)?;
    wide.into_iter()
        .map(|v| u32::try_from(v).map_err(|_| format!("{v} does not fit in 32 bits")))
        .collect()
}

fn parse_with<T: Stepped>(
    spec: &str,
    scalar: impl Fn(&str) -> Result<T, String>,
) -> Result<Vec<T>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty range".into());
    }
    if spec.contains(',') {
        let values: Result<Vec<T>, String> = spec
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() {
                    Err("empty list entry".into())
                } else {
                    scalar(tok)
                }
            })
            .collect();
        let values = values?;
        if values.is_empty() {
            return Err("empty range".into());
        }
        return Ok(values);
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range must be start:stop:step, got '{spec}'"));
        }
        let start = scalar(parts[0].trim())?;
        let stop = scalar(parts[1].trim())?;
        let step = scalar(parts[2].trim())?;
        let values = T::steps(start, stop, step)?;
        if values.is_empty() {
            return Err(format!("range '{spec}' is empty"));
        }
        return Ok(values);
    }
    Ok(vec![scalar(spec)?])
}

/// Types that can enumerate an inclusive stepped range.
trait Stepped: Sized + Copy {
    fn steps(start: Self, stop: Self, step: Self) -> Result<Vec<Self>, String>;
}

impl Stepped for u64 {
    fn steps(start: u64, stop: u64, step: u64) -> Result<Vec<u64>, String> {
        if step == 0 {
            return Err("range step must be positive".into());
        }
        Ok((start..=stop).step_by(step as usize).collect())
    }
}

impl Stepped for f64 {
    fn steps(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, String> {
        if !(step > 0.0) {
            return Err("range step must be positive".into());
        }
        let mut values = Vec::new();
        let slack = step * 1e-9;
        let mut k = 0u64;
        loop {
            let v = start + k as f64 * step;
            if v > stop + slack {
                break;
            }
            values.push(v);
            k += 1;
            if k > 10_000_000 {
                return Err("range has too many points".into());
            }
        }
        Ok(values)
    }
}

/// A `--cap-n` value: explicit numbers or `auto` (N = ⌈2√n⌉ per row).
#[derive(Debug, Clone)]
pub enum CapSpec {
    Auto,
    Values(Vec<u64>),
}

pub fn parse_cap(spec: &str) -> Result<CapSpec, String> {
    if spec.trim().eq_ignore_ascii_case("auto") {
        Ok(CapSpec::Auto)
    } else {
        Ok(CapSpec::Values(parse_u64(spec)?))
    }
}
