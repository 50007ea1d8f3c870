/// Parses `a,b,c` or the inclusive linear grid `start:end:count`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let number = |item: &str| -> Result<f64, String> {
        let item = item.trim();
        item.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("not a finite number: {item:?}"))
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [list] => list.split(',').map(number).collect(),
        [start, end, count] => {
            let (a, b) = (number(start)?, number(end)?);
            let n: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("grid count must be a positive integer, got {count:?}"))?;
            match n {
                0 => Err("grid count must be at least 1".into()),
                1 => Ok(vec![a]),
                _ => Ok((0..n)
                    .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
                    .collect()),
            }
        }
        _ => Err(format!("expected a,b,c or start:end:count, got {text:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_grid("0.5, 1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        assert_eq!(parse_grid("1:2:3").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("3:9:1").unwrap(), vec![3.0]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("x").is_err());
        assert!(parse_grid("inf").is_err());
    }
}
