#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "autoconf/cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using autoconf::cli::kExitInvalid;
using autoconf::cli::kExitOk;
using autoconf::cli::kExitUsage;
using autoconf::cli::run_cli;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    RunResult result;
    result.code = run_cli(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::string data(const std::string& name) { return testsupport::data_path(name); }

std::string golden(const std::string& name) {
    return testsupport::read_file(testsupport::golden_path(name));
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

class TempDir {
public:
    TempDir() {
        dir_ = std::filesystem::temp_directory_path() /
               ("autoconf-cli-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter_++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    std::string file(const std::string& name, const std::string& content) {
        std::string path = (dir_ / name).string();
        std::ofstream(path, std::ios::binary) << content;
        return path;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    std::filesystem::path dir_;
    static inline std::atomic<int> counter_ = 0;
};

int run_binary(const std::string& shell_command) {
    int status = std::system(shell_command.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("validate accepts the shipped fixtures") {
    for (const char* name : {"user.xml", "user_raw.xml", "admin.xml", "empty.xml"}) {
        CAPTURE(name);
        RunResult r = run({"validate", "--custom", data(name)});
        CHECK(r.code == kExitOk);
        CHECK(r.out == "OK: " + data(name) + " is a valid customization file\n");
    }
    RunResult r = run({"validate", "--manifest", data("stock_manifest.xml")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "OK: " + data("stock_manifest.xml") + " is a valid manifest file\n");
    CHECK(r.err.empty());
}

TEST_CASE("validate reports legacy spellings as warnings") {
    RunResult r = run({"validate", "--custom", data("user.xml")});
    CHECK(r.code == kExitOk);
    CHECK(r.err ==
          "warning: element 'eventName' treated as 'name'\n"
          "warning: element 'POLICIES' treated as 'PERMISSIONS'\n");
    RunResult raw = run({"validate", "--custom", data("user_raw.xml")});
    CHECK(raw.code == kExitOk);
    CHECK(contains(raw.err, "warning: control type 'CheckBox' treated as 'Checkbox'\n"));
}

TEST_CASE("strict dialect turns the warnings into failures") {
    RunResult r = run({"validate", "--custom", data("user.xml"), "--strict-dialect"});
    CHECK(r.code == kExitInvalid);
    CHECK(r.err == "error: " + data("user.xml") +
                       ": element 'eventName' is a legacy spelling of 'name'\n");
    CHECK(r.out.empty());
    RunResult a = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("admin.xml"),
                       "--strict-dialect"});
    CHECK(a.code == kExitInvalid);
    CHECK(a.out.empty());
}

TEST_CASE("validate rejects malformed input with a position") {
    TempDir tmp;
    std::string path = tmp.file("broken.xml", "<customization><GUI></customization>");
    RunResult r = run({"validate", "--custom", path});
    CHECK(r.code == kExitInvalid);
    CHECK(contains(r.err, "error: " + path + ": mismatched closing tag '</customization>'"));
    CHECK(contains(r.err, "(line 1, column 21)"));
}

TEST_CASE("validate explains structure violations") {
    TempDir tmp;
    std::string path = tmp.file(
        "short.xml",
        "<customization><GUI><control><name>x</name></control></GUI></customization>");
    RunResult r = run({"validate", "--custom", path});
    CHECK(r.code == kExitInvalid);
    CHECK(contains(r.err,
                   "error: " + path + ": customization document failed structure validation\n"));
    CHECK(contains(r.err,
                   "  /customization/GUI/control: expected (name, type, property, value), "
                   "found name\n"));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"validate", "--custom", "/no/such/file.xml"}).code == kExitUsage);
    CHECK(run({"validate"}).code == kExitUsage);
    CHECK(run({"validate", "--custom", data("user.xml"), "--manifest",
               data("stock_manifest.xml")})
              .code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"apply", "-m", data("stock_manifest.xml")}).code == kExitUsage);
    CHECK(run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"), "--format",
               "yaml"})
              .code == kExitUsage);
    RunResult r = run({"sets", "--bogus-flag"});
    CHECK(r.code == kExitUsage);
    CHECK(contains(r.err, "run 'autoconf --help' for usage"));
}

TEST_CASE("help is printed on request") {
    RunResult top = run({"--help"});
    CHECK(top.code == kExitOk);
    CHECK(contains(top.out, "validate"));
    CHECK(contains(top.out, "apply"));
    CHECK(contains(top.out, "sets"));
    CHECK(contains(top.out, "diff"));
    RunResult sub = run({"apply", "--help"});
    CHECK(sub.code == kExitOk);
    CHECK(contains(sub.out, "--format"));
    CHECK(contains(sub.out, "--output"));
}

TEST_CASE("apply prints the customized manifest") {
    RunResult r = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == golden("user_apply.xml"));
    // Byte-for-byte deterministic.
    CHECK(run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml")}).out == r.out);
}

TEST_CASE("applying an empty customization reproduces the manifest") {
    RunResult r = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("empty.xml")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == testsupport::read_fixture("stock_manifest.xml"));
}

TEST_CASE("apply renders json") {
    RunResult r = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"),
                       "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == golden("user_apply.json"));
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["application"] == "Stock Account Creator");
    CHECK(j["controls"].size() == 18);
    CHECK(j["events"].size() == 4);
    CHECK(j["permissions"].size() == 3);
    CHECK(j["provenance"].size() == 8);
    CHECK(j["provenance"][0]["partition"] == "gui");
    CHECK(j["provenance"][0]["target"] == "adminToolStripMenuItem");
    CHECK(j["provenance"][0]["old_value"] == "True");
    bool save_visible = true;
    for (const auto& control : j["controls"]) {
        if (control["name"] == "saveButton") save_visible = control["properties"]["Visible"];
    }
    CHECK_FALSE(save_visible);
    for (const auto& control : j["controls"]) {
        if (control["name"] == "countryCBX") {
            CHECK(control["properties"]["Items"] ==
                  nlohmann::json::array({"Lebanon", "France", "USA"}));
        }
    }
}

TEST_CASE("apply renders text") {
    RunResult r = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"),
                       "--format", "text"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == golden("user_apply.txt"));
    CHECK(contains(r.out, "application: Stock Account Creator\n"));
    CHECK(contains(r.out, "control saveButton type=Button Visible=False Enabled=True"));
    CHECK(contains(r.out, "event saveButton_Click control=saveButton enabled=False\n"));
    CHECK(contains(r.out, "permission DiskAccess granted=False\n"));
}

TEST_CASE("apply writes the output file atomically") {
    TempDir tmp;
    std::string out_path = tmp.path("result.xml");
    RunResult r = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"), "-o",
                       out_path});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    CHECK(testsupport::read_file(out_path) == golden("user_apply.xml"));
    CHECK_FALSE(std::filesystem::exists(out_path + ".tmp"));

    // Overwriting with the same inputs is stable.
    RunResult again = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"),
                           "-o", out_path});
    CHECK(again.code == kExitOk);
    CHECK(testsupport::read_file(out_path) == golden("user_apply.xml"));
}

TEST_CASE("a failing apply leaves no output file behind") {
    TempDir tmp;
    std::string out_path = tmp.path("never.xml");
    RunResult r = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user_raw.xml"),
                       "-o", out_path});
    CHECK(r.code == kExitInvalid);
    CHECK(contains(r.err, "error: " + data("user_raw.xml") +
                              ": subset violation: gui name 'approvedCheckbox' is not declared "
                              "by the application\n"));
    CHECK_FALSE(std::filesystem::exists(out_path));
    CHECK_FALSE(std::filesystem::exists(out_path + ".tmp"));

    RunResult io = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"), "-o",
                        tmp.path("missing-dir") + "/out.xml"});
    CHECK(io.code == kExitUsage);
    CHECK(contains(io.err, "cannot write"));
}

TEST_CASE("sets prints the three element sets") {
    RunResult user = run({"sets", "-m", data("stock_manifest.xml"), "-c", data("user.xml")});
    CHECK(user.code == kExitOk);
    CHECK(user.out == golden("user_sets.txt"));
    RunResult admin = run({"sets", "-m", data("stock_manifest.xml"), "-c", data("admin.xml")});
    CHECK(admin.code == kExitOk);
    CHECK(admin.out == golden("admin_sets.txt"));
}

TEST_CASE("sets --check verifies the model properties") {
    RunResult r =
        run({"sets", "-m", data("stock_manifest.xml"), "-c", data("user.xml"), "--check"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == golden("user_check.txt"));
    CHECK(contains(r.out, "subset property: PASS\n"));
    CHECK(contains(r.out, "intersection property: PASS\n"));
}

TEST_CASE("sets --check fails on a subset violation") {
    RunResult r =
        run({"sets", "-m", data("stock_manifest.xml"), "-c", data("user_raw.xml"), "--check"});
    CHECK(r.code == kExitInvalid);
    CHECK(contains(r.out, "A (application active set)\n"));
    CHECK_FALSE(contains(r.out, "X (customization keep set)"));
    CHECK(contains(r.out, "subset property: FAIL (gui 'approvedCheckbox')\n"));
    CHECK(contains(r.out, "intersection property: FAIL (gui 'approvedCheckbox')\n"));
}

TEST_CASE("sets without --check reports subset violations on stderr") {
    RunResult r = run({"sets", "-m", data("stock_manifest.xml"), "-c", data("user_raw.xml")});
    CHECK(r.code == kExitInvalid);
    CHECK(contains(r.err, "subset violation: gui name 'approvedCheckbox'"));
}

TEST_CASE("diff lists the provenance records") {
    RunResult r = run({"diff", "-m", data("stock_manifest.xml"), "-c", data("user.xml")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == golden("user_diff.txt"));
    RunResult none = run({"diff", "-m", data("stock_manifest.xml"), "-c", data("empty.xml")});
    CHECK(none.code == kExitOk);
    CHECK(none.out.empty());
}

TEST_CASE("grammar overrides") {
    RunResult ok = run({"validate", "--custom", data("user.xml"), "--grammar",
                        data("customization.dtd")});
    CHECK(ok.code == kExitOk);
    RunResult manifest_ok = run({"validate", "--manifest", data("stock_manifest.xml"),
                                 "--grammar", data("manifest.dtd")});
    CHECK(manifest_ok.code == kExitOk);

    TempDir tmp;
    std::string narrow = tmp.file("narrow.dtd",
                                  "<!ELEMENT customization (GUI)>\n<!ELEMENT GUI (control*)>\n"
                                  "<!ELEMENT control (name, type, property, value)>\n"
                                  "<!ELEMENT name (#PCDATA)>\n<!ELEMENT type (#PCDATA)>\n"
                                  "<!ELEMENT property (#PCDATA)>\n<!ELEMENT value (#PCDATA)>\n");
    RunResult narrowed = run({"validate", "--custom", data("user.xml"), "--grammar", narrow});
    CHECK(narrowed.code == kExitInvalid);
    CHECK(contains(narrowed.err, "failed structure validation"));

    std::string broken = tmp.file("broken.dtd", "<!ELEMENT a (b)>\n<!ELEMENT a (c)>\n");
    RunResult bad = run({"validate", "--custom", data("user.xml"), "--grammar", broken});
    CHECK(bad.code == kExitInvalid);
    CHECK(contains(bad.err, "conflicting redeclaration"));

    RunResult missing =
        run({"validate", "--custom", data("user.xml"), "--grammar", "/no/such.dtd"});
    CHECK(missing.code == kExitUsage);

    RunResult pair = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user.xml"),
                          "--manifest-grammar", data("manifest.dtd"), "--custom-grammar",
                          data("customization.dtd")});
    CHECK(pair.code == kExitOk);
    CHECK(pair.out == golden("user_apply.xml"));
}

TEST_CASE("no escape codes are emitted off the terminal") {
    RunResult bad = run({"apply", "-m", data("stock_manifest.xml"), "-c", data("user_raw.xml")});
    CHECK_FALSE(contains(bad.out, "\x1b"));
    CHECK_FALSE(contains(bad.err, "\x1b"));
    RunResult good =
        run({"sets", "-m", data("stock_manifest.xml"), "-c", data("user.xml"), "--check"});
    CHECK_FALSE(contains(good.out, "\x1b"));
    CHECK_FALSE(contains(good.err, "\x1b"));
}

TEST_CASE("concurrent invocations share the embedded grammars safely") {
    std::atomic<int> failures = 0;
    std::vector<std::thread> workers;
    for (int t = 0; t < 8; ++t) {
        workers.emplace_back([&failures] {
            for (int i = 0; i < 20; ++i) {
                if (run({"validate", "--custom", data("user.xml")}).code != kExitOk)
                    ++failures;
                RunResult applied =
                    run({"apply", "-m", data("stock_manifest.xml"), "-c", data("admin.xml")});
                if (applied.code != kExitOk || applied.out != golden("admin_apply.xml"))
                    ++failures;
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    CHECK(failures == 0);
}

TEST_CASE("the installed binary behaves like the library entry point") {
    TempDir tmp;
    std::string out_path = tmp.path("out.txt");
    std::string bin = AUTOCONF_CLI_BIN;

    CHECK(run_binary("AUTOCONF_NO_COLOR=1 '" + bin + "' sets -m '" +
                     data("stock_manifest.xml") + "' -c '" + data("user.xml") + "' --check > '" +
                     out_path + "' 2>/dev/null") == kExitOk);
    CHECK(testsupport::read_file(out_path) == golden("user_check.txt"));

    CHECK(run_binary("'" + bin + "' validate --custom '" + data("user.xml") +
                     "' --strict-dialect >/dev/null 2>&1") == kExitInvalid);
    CHECK(run_binary("'" + bin + "' frobnicate >/dev/null 2>&1") == kExitUsage);
    CHECK(run_binary("'" + bin + "' apply -m '" + data("stock_manifest.xml") + "' -c '" +
                     data("user_raw.xml") + "' >/dev/null 2>&1") == kExitInvalid);
}
