//! Helpers shared by the CSV writers: parameter header lines.

use std::io::Write;

use crate::error::Result;

/// Name and seeding of the generator used everywhere in this crate.
pub const RNG_NAME: &str = "pcg64";

/// Writes one `# key=value` line per parameter, in the order given.
pub fn write_params<O: Write + ?Sized>(out: &mut O, params: &[(&str, String)]) -> Result<()> {
    for (k, v) in params {
        writeln!(out, "# {k}={v}")?;
    }
    Ok(())
}

/// Parses `# key=value` lines back; other lines are ignored.
pub fn read_params(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_round_trip() {
        let mut buf = Vec::new();
        let params = [("seed", "7".to_string()), ("domain", "-1:1".to_string())];
        write_params(&mut buf, &params).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# seed=7\n# domain=-1:1\n");
        let back = read_params(&format!("{text}steps,accepted\n1,1\n"));
        assert_eq!(back[0], ("seed".into(), "7".into()));
        assert_eq!(back[1], ("domain".into(), "-1:1".into()));
    }
}
