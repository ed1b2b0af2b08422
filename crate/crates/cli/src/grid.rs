//! Parsing of list and range arguments such as `15,31,63` or `0.05:0.05:0.95`.

/// Parses a comma-separated list whose items are plain values or inclusive
/// `start:step:stop` ranges.
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [single] => out.push(parse_f64(single)?),
            [start, step, stop] => {
                let (start, step, stop) = (parse_f64(start)?, parse_f64(step)?, parse_f64(stop)?);
                if step <= 0.0 || stop < start {
                    return Err(format!("range `{item}` needs a positive step and start <= stop"));
                }
                // index-based so that 0.05:0.05:0.95 hits its end point
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                out.extend((0..count).map(|i| start + i as f64 * step));
            }
            _ => return Err(format!("`{item}` is neither a value nor start:step:stop")),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

/// Integer counterpart of [`parse_f64_list`]; a two-part `start:stop` range
/// steps by doubling, the natural sweep for block lengths.
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [single] => out.push(parse_usize(single)?),
            [start, stop] => {
                let (mut v, stop) = (parse_usize(start)?, parse_usize(stop)?);
                if v == 0 || stop < v {
                    return Err(format!("doubling range `{item}` needs 1 <= start <= stop"));
                }
                while v <= stop {
                    out.push(v);
                    v *= 2;
                }
            }
            [start, step, stop] => {
                let (start, step, stop) = (parse_usize(start)?, parse_usize(step)?, parse_usize(stop)?);
                if step == 0 || stop < start {
                    return Err(format!("range `{item}` needs a positive step and start <= stop"));
                }
                out.extend((start..=stop).step_by(step));
            }
            _ => return Err(format!("`{item}` is not a valid integer list item")),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}
