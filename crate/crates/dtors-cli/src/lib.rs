//! Library surface of the `dtors` command-line tool: subcommand
//! implementations live here so integration tests can drive them directly.

pub mod audit;
pub mod certificate;
pub mod order;
pub mod sweep;
pub mod textio;
