//! Sweep configuration files: plain `key = value` lines mirroring the
//! command-line flags, `#` comments, blank lines ignored. Flags given on
//! the command line take precedence over file values.

use std::collections::BTreeMap;

pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`, got {raw:?}", lineno + 1))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(format!("line {}: empty key", lineno + 1));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

pub fn parsed<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, String> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("config key {key}: cannot parse {raw:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_values() {
        let text = "# sweep setup\nfamily = binomials\np-max= 101\n\nseed =7\n";
        let map = parse_kv(text).unwrap();
        assert_eq!(map["family"], "binomials");
        assert_eq!(map["p-max"], "101");
        assert_eq!(parsed::<u64>(&map, "seed").unwrap(), Some(7));
        assert_eq!(parsed::<u64>(&map, "missing").unwrap(), None);
        assert!(parsed::<u64>(&map, "family").is_err());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_kv("just words\n").is_err());
        assert!(parse_kv(" = 3\n").is_err());
    }
}
