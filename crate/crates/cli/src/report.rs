use serde::Serialize;

use crate::GlobalArgs;

pub const SCHEMA_ID: &str = "amocnf-report/v1";

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Config<'a, C: Serialize> {
    #[serde(flatten)]
    args: &'a C,
    enumeration_cap: u64,
    search_cap: u64,
}

#[derive(Serialize)]
struct Report<'a, C: Serialize, R: Serialize> {
    schema: &'static str,
    tool: Tool,
    command: &'static str,
    config: Config<'a, C>,
    seed: u64,
    result: &'a R,
}

/// The JSON report envelope shared by every subcommand.
pub fn render<C: Serialize, R: Serialize>(command: &'static str, args: &C, global: &GlobalArgs, result: &R) -> String {
    let report = Report {
        schema: SCHEMA_ID,
        tool: Tool {
            name: "amocnf",
            version: env!("CARGO_PKG_VERSION"),
        },
        command,
        config: Config {
            args,
            enumeration_cap: global.enumeration_cap,
            search_cap: global.search_cap,
        },
        seed: global.seed,
        result,
    };
    serde_json::to_string_pretty(&report).expect("reports serialize")
}
