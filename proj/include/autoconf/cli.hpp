#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace autoconf::cli {

enum class Command { Validate, Apply, Diff, Sets };
enum class FileKind { Custom, Manifest };
enum class OutputFormat { Xml, Json, Text };

struct CliConfig {
    Command command = Command::Validate;
    FileKind validate_kind = FileKind::Custom;
    std::string manifest_path;
    std::string custom_path;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::Xml;
    std::optional<std::string> manifest_grammar_path;
    std::optional<std::string> custom_grammar_path;
    bool strict_dialect = false;
    bool check = false;
};

inline constexpr int kExitOk = 0;
/// Well-formedness, validation, semantic, or model failure.
inline constexpr int kExitInvalid = 1;
/// Usage or I/O error.
inline constexpr int kExitUsage = 2;

/// Run one command. `args` excludes the program name. Output goes to the
/// given streams; ANSI color is used only on a terminal and never when
/// AUTOCONF_NO_COLOR is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autoconf::cli
