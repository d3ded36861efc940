#include "autoconf/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "autoconf/controls.hpp"
#include "autoconf/custlang.hpp"
#include "autoconf/dtd.hpp"
#include "autoconf/engine.hpp"
#include "autoconf/grammars.hpp"
#include "autoconf/manifest.hpp"
#include "autoconf/xml.hpp"

namespace autoconf::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + path + "'");
        out << content;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw IoError("cannot write '" + path + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot write '" + path + "'");
    }
}

bool stream_is_terminal(const std::ostream& os) {
    if (&os == &std::cout) return isatty(fileno(stdout)) != 0;
    if (&os == &std::cerr || &os == &std::clog) return isatty(fileno(stderr)) != 0;
    return false;
}

class Palette {
public:
    explicit Palette(const std::ostream& os)
        : enabled_(stream_is_terminal(os) && std::getenv("AUTOCONF_NO_COLOR") == nullptr) {}

    std::string red(std::string_view s) const { return wrap("\x1b[31m", s); }
    std::string green(std::string_view s) const { return wrap("\x1b[32m", s); }
    std::string yellow(std::string_view s) const { return wrap("\x1b[33m", s); }

private:
    bool enabled_;

    std::string wrap(const char* code, std::string_view s) const {
        if (!enabled_) return std::string(s);
        return std::string(code) + std::string(s) + "\x1b[0m";
    }
};

void print_warnings(std::ostream& err, const Palette& pal,
                    const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) {
        err << pal.yellow("warning") << ": " << w << "\n";
    }
}

void print_error(std::ostream& err, const Palette& pal, const std::string& path,
                 const std::string& message) {
    err << pal.red("error") << ": " << path << ": " << message << "\n";
}

void print_report(std::ostream& err, const dtd::ValidationReport& report) {
    for (const dtd::Violation& v : report.violations) {
        err << "  " << v.path << ": expected " << v.expected << ", found " << v.found << "\n";
    }
}

dtd::DtdGrammar load_grammar(const std::optional<std::string>& override_path,
                             const dtd::DtdGrammar& embedded, std::ostream& err,
                             const Palette& pal) {
    if (!override_path) return embedded;
    std::vector<std::string> warnings;
    dtd::DtdGrammar grammar = dtd::parse_dtd(read_file(*override_path), &warnings);
    print_warnings(err, pal, warnings);
    return grammar;
}

manifest::ApplicationManifest load_manifest_file(const std::string& path,
                                                 const dtd::DtdGrammar& grammar,
                                                 std::ostream& err, const Palette& pal) {
    std::string text = read_file(path);
    xml::Document doc = xml::parse_document(text);
    std::vector<std::string> warnings;
    manifest::ApplicationManifest m = manifest::parse_manifest(doc, grammar, &warnings);
    print_warnings(err, pal, warnings);
    return m;
}

custlang::CustomizationSpec load_custom_file(const std::string& path,
                                             const dtd::DtdGrammar& grammar,
                                             const custlang::LowerOptions& options,
                                             std::ostream& err, const Palette& pal) {
    std::string text = read_file(path);
    xml::Document doc = xml::parse_document(text);
    std::vector<std::string> warnings;
    custlang::CustomizationSpec spec = custlang::lower_to_spec(doc, grammar, options, &warnings);
    print_warnings(err, pal, warnings);
    return spec;
}

struct Inputs {
    manifest::ApplicationManifest app;
    custlang::CustomizationSpec spec;
};

// Loads both inputs; prints the error and sets *code on failure.
std::optional<Inputs> load_inputs(const CliConfig& cfg, std::ostream& err, const Palette& pal,
                                  int* code) {
    Inputs inputs;
    const std::string* current = &cfg.manifest_path;
    try {
        dtd::DtdGrammar manifest_grammar =
            load_grammar(cfg.manifest_grammar_path, grammars::manifest_grammar(), err, pal);
        inputs.app = load_manifest_file(cfg.manifest_path, manifest_grammar, err, pal);
        current = &cfg.custom_path;
        dtd::DtdGrammar custom_grammar =
            load_grammar(cfg.custom_grammar_path, grammars::customization_grammar(), err, pal);
        inputs.spec = load_custom_file(cfg.custom_path, custom_grammar,
                                       {cfg.strict_dialect}, err, pal);
        return inputs;
    } catch (const IoError& e) {
        err << pal.red("error") << ": " << e.what() << "\n";
        *code = kExitUsage;
    } catch (const xml::WellFormednessError& e) {
        print_error(err, pal, *current, e.what());
        *code = kExitInvalid;
    } catch (const dtd::DtdSyntaxError& e) {
        print_error(err, pal, *current, e.what());
        *code = kExitInvalid;
    } catch (const SemanticError& e) {
        print_error(err, pal, *current, e.what());
        if (e.report()) print_report(err, *e.report());
        *code = kExitInvalid;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Renderers

nlohmann::ordered_json value_to_json(const PropertyValue& value) {
    if (const bool* b = std::get_if<bool>(&value)) return *b;
    if (const std::string* s = std::get_if<std::string>(&value)) return *s;
    return std::get<std::vector<std::string>>(value);
}

std::string render_json(const engine::CustomizedManifest& customized) {
    const manifest::ApplicationManifest& m = customized.manifest;
    nlohmann::ordered_json j;
    j["application"] = m.app_name;
    j["controls"] = nlohmann::ordered_json::array();
    for (const manifest::ControlDecl& control : m.controls) {
        nlohmann::ordered_json jc;
        jc["name"] = control.name;
        jc["control_type"] = std::string(to_string(control.control_type));
        nlohmann::ordered_json props;
        for (PropertyName property : applicable_properties(control.control_type)) {
            props[std::string(to_string(property))] = value_to_json(control.property(property));
        }
        jc["properties"] = std::move(props);
        j["controls"].push_back(std::move(jc));
    }
    j["events"] = nlohmann::ordered_json::array();
    for (const manifest::EventDecl& event : m.events) {
        j["events"].push_back({{"name", event.name},
                               {"control_name", event.control_name},
                               {"enabled", event.enabled}});
    }
    j["permissions"] = nlohmann::ordered_json::array();
    for (const manifest::PermissionDecl& permission : m.permissions) {
        j["permissions"].push_back(
            {{"name", std::string(to_string(permission.name))}, {"granted", permission.granted}});
    }
    j["provenance"] = nlohmann::ordered_json::array();
    for (const engine::ChangeRecord& record : customized.provenance) {
        j["provenance"].push_back({{"partition", std::string(engine::to_string(record.partition))},
                                   {"target", record.target},
                                   {"field", record.field},
                                   {"old_value", record.old_value},
                                   {"new_value", record.new_value}});
    }
    return j.dump(2) + "\n";
}

std::string render_text(const engine::CustomizedManifest& customized) {
    const manifest::ApplicationManifest& m = customized.manifest;
    std::ostringstream out;
    out << "application: " << m.app_name << "\n";
    for (const manifest::ControlDecl& control : m.controls) {
        out << "control " << control.name << " type=" << to_string(control.control_type);
        for (PropertyName property : applicable_properties(control.control_type)) {
            out << " " << to_string(property) << "=" << render_value(control.property(property));
        }
        out << "\n";
    }
    for (const manifest::EventDecl& event : m.events) {
        out << "event " << event.name << " control=" << event.control_name
            << " enabled=" << (event.enabled ? "True" : "False") << "\n";
    }
    for (const manifest::PermissionDecl& permission : m.permissions) {
        out << "permission " << to_string(permission.name)
            << " granted=" << (permission.granted ? "True" : "False") << "\n";
    }
    return out.str();
}

std::string render_output(const engine::CustomizedManifest& customized, OutputFormat format) {
    switch (format) {
        case OutputFormat::Xml: return manifest::serialize_manifest(customized.manifest);
        case OutputFormat::Json: return render_json(customized);
        case OutputFormat::Text: return render_text(customized);
    }
    return {};
}

void print_set_block(std::ostream& out, const std::string& label,
                     const engine::ElementSet& set) {
    auto line = [&out](const char* name, const std::set<std::string>& names) {
        out << "  " << name << " = {";
        bool first = true;
        for (const std::string& n : names) {
            out << (first ? " " : ", ") << n;
            first = false;
        }
        out << " }" << "\n";
    };
    out << label << "\n";
    line("gui", set.gui);
    line("events", set.events);
    line("permissions", set.permissions);
}

// ---------------------------------------------------------------------------
// Commands

int cmd_validate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    Palette out_pal(out);
    Palette err_pal(err);
    bool is_custom = cfg.validate_kind == FileKind::Custom;
    const std::string& path = is_custom ? cfg.custom_path : cfg.manifest_path;
    try {
        if (is_custom) {
            dtd::DtdGrammar grammar = load_grammar(
                cfg.custom_grammar_path, grammars::customization_grammar(), err, err_pal);
            load_custom_file(path, grammar, {cfg.strict_dialect}, err, err_pal);
            out << out_pal.green("OK") << ": " << path << " is a valid customization file\n";
        } else {
            dtd::DtdGrammar grammar = load_grammar(cfg.manifest_grammar_path,
                                                   grammars::manifest_grammar(), err, err_pal);
            load_manifest_file(path, grammar, err, err_pal);
            out << out_pal.green("OK") << ": " << path << " is a valid manifest file\n";
        }
        return kExitOk;
    } catch (const IoError& e) {
        err << err_pal.red("error") << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const xml::WellFormednessError& e) {
        print_error(err, err_pal, path, e.what());
        return kExitInvalid;
    } catch (const dtd::DtdSyntaxError& e) {
        print_error(err, err_pal, path, e.what());
        return kExitInvalid;
    } catch (const SemanticError& e) {
        print_error(err, err_pal, path, e.what());
        if (e.report()) print_report(err, *e.report());
        return kExitInvalid;
    }
}

int cmd_apply(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    Palette err_pal(err);
    int code = kExitOk;
    std::optional<Inputs> inputs = load_inputs(cfg, err, err_pal, &code);
    if (!inputs) return code;
    try {
        engine::CustomizedManifest customized = engine::apply(inputs->app, inputs->spec);
        std::string rendered = render_output(customized, cfg.format);
        if (cfg.output_path) {
            write_file_atomic(*cfg.output_path, rendered);
        } else {
            out << rendered;
        }
        return kExitOk;
    } catch (const engine::SubsetViolation& e) {
        print_error(err, err_pal, cfg.custom_path, e.what());
        return kExitInvalid;
    } catch (const SemanticError& e) {
        print_error(err, err_pal, cfg.custom_path, e.what());
        return kExitInvalid;
    } catch (const IoError& e) {
        err << err_pal.red("error") << ": " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_sets(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    Palette out_pal(out);
    Palette err_pal(err);
    int code = kExitOk;
    std::optional<Inputs> inputs = load_inputs(cfg, err, err_pal, &code);
    if (!inputs) return code;
    engine::ElementSet active = manifest::active_set(inputs->app);
    if (cfg.check) {
        engine::ModelReport report = engine::verify_model(inputs->app, inputs->spec);
        print_set_block(out, "A (application active set)", active);
        if (report.subset_holds) {
            engine::ElementSet keep = engine::keep_set(inputs->app, inputs->spec);
            print_set_block(out, "X (customization keep set)", keep);
            engine::ElementSet after =
                manifest::active_set(engine::apply(inputs->app, inputs->spec).manifest);
            print_set_block(out, "C (customized active set)", after);
        }
        auto verdict = [&](bool ok) {
            if (ok) return out_pal.green("PASS");
            std::string text = "FAIL";
            if (report.witness) {
                text += " (" + std::string(engine::to_string(report.witness->first)) + " '" +
                        report.witness->second + "')";
            }
            return out_pal.red(text);
        };
        out << "subset property: " << verdict(report.subset_holds) << "\n";
        out << "intersection property: " << verdict(report.intersection_holds) << "\n";
        return report.subset_holds && report.intersection_holds ? kExitOk : kExitInvalid;
    }
    try {
        engine::ElementSet keep = engine::keep_set(inputs->app, inputs->spec);
        engine::ElementSet after =
            manifest::active_set(engine::apply(inputs->app, inputs->spec).manifest);
        print_set_block(out, "A (application active set)", active);
        print_set_block(out, "X (customization keep set)", keep);
        print_set_block(out, "C (customized active set)", after);
        return kExitOk;
    } catch (const engine::SubsetViolation& e) {
        print_error(err, err_pal, cfg.custom_path, e.what());
        return kExitInvalid;
    } catch (const SemanticError& e) {
        print_error(err, err_pal, cfg.custom_path, e.what());
        return kExitInvalid;
    }
}

int cmd_diff(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    Palette err_pal(err);
    int code = kExitOk;
    std::optional<Inputs> inputs = load_inputs(cfg, err, err_pal, &code);
    if (!inputs) return code;
    try {
        engine::CustomizedManifest customized = engine::apply(inputs->app, inputs->spec);
        for (const engine::ChangeRecord& record : customized.provenance) {
            out << engine::to_string(record.partition) << " " << record.target << " "
                << record.field << " " << record.old_value << " -> " << record.new_value
                << "\n";
        }
        return kExitOk;
    } catch (const engine::SubsetViolation& e) {
        print_error(err, err_pal, cfg.custom_path, e.what());
        return kExitInvalid;
    } catch (const SemanticError& e) {
        print_error(err, err_pal, cfg.custom_path, e.what());
        return kExitInvalid;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Declarative self-configuration of application manifests"};
    app.name("autoconf");
    app.require_subcommand(1);

    static const std::map<std::string, OutputFormat> kFormats{
        {"xml", OutputFormat::Xml}, {"json", OutputFormat::Json}, {"text", OutputFormat::Text}};

    CLI::App* validate = app.add_subcommand(
        "validate", "Check one file against its grammar and semantic rules");
    CLI::Option* vc = validate->add_option("--custom", cfg.custom_path,
                                           "Customization file to validate");
    CLI::Option* vm =
        validate->add_option("--manifest", cfg.manifest_path, "Manifest file to validate");
    vc->excludes(vm);
    vm->excludes(vc);
    validate->add_option("--grammar", cfg.custom_grammar_path,
                         "DTD file overriding the embedded grammar");
    validate->add_flag("--strict-dialect", cfg.strict_dialect,
                       "Reject legacy spellings (eventName, POLICIES, type Image or CheckBox)");

    auto add_pair_options = [&](CLI::App* sub) {
        sub->add_option("-m,--manifest", cfg.manifest_path, "Application manifest file")
            ->required();
        sub->add_option("-c,--custom", cfg.custom_path, "Customization file")->required();
        sub->add_option("--manifest-grammar", cfg.manifest_grammar_path,
                        "DTD file overriding the embedded manifest grammar");
        sub->add_option("--custom-grammar", cfg.custom_grammar_path,
                        "DTD file overriding the embedded customization grammar");
        sub->add_flag("--strict-dialect", cfg.strict_dialect,
                      "Reject legacy spellings (eventName, POLICIES, type Image or CheckBox)");
    };

    CLI::App* apply_cmd =
        app.add_subcommand("apply", "Apply a customization to a manifest and print or write it");
    add_pair_options(apply_cmd);
    apply_cmd->add_option("-o,--output", cfg.output_path, "Write the result to this file");
    apply_cmd
        ->add_option("-f,--format", cfg.format, "Output format: xml, json, or text")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    CLI::App* sets_cmd = app.add_subcommand(
        "sets", "Print the A, X, and C element sets of a manifest and customization");
    add_pair_options(sets_cmd);
    sets_cmd->add_flag("--check", cfg.check,
                       "Check the subset and intersection properties; fail on violation");

    CLI::App* diff_cmd =
        app.add_subcommand("diff", "List the state changes a customization causes");
    add_pair_options(diff_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        Palette err_pal(err);
        err << err_pal.red("error") << ": " << e.what() << "\n";
        err << "run 'autoconf --help' for usage\n";
        return kExitUsage;
    }

    if (validate->parsed()) {
        if (vc->count() == 0 && vm->count() == 0) {
            Palette err_pal(err);
            err << err_pal.red("error") << ": validate needs --custom or --manifest\n";
            return kExitUsage;
        }
        cfg.command = Command::Validate;
        cfg.validate_kind = vc->count() > 0 ? FileKind::Custom : FileKind::Manifest;
        if (cfg.validate_kind == FileKind::Manifest) {
            cfg.manifest_grammar_path = cfg.custom_grammar_path;
            cfg.custom_grammar_path.reset();
        }
        return cmd_validate(cfg, out, err);
    }
    if (apply_cmd->parsed()) {
        cfg.command = Command::Apply;
        return cmd_apply(cfg, out, err);
    }
    if (sets_cmd->parsed()) {
        cfg.command = Command::Sets;
        return cmd_sets(cfg, out, err);
    }
    cfg.command = Command::Diff;
    return cmd_diff(cfg, out, err);
}

}  // namespace autoconf::cli
