#include "iotalog/corpus.hpp"

#include <fstream>
#include <sstream>

namespace iotalog {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::string Expectation::render() const {
    if (accept) return "ACCEPT";
    return std::string("REJECT(") + check_error_kind_name(*reject_kind) + ")";
}

CheckRun run_check_text(const std::string& text, const SystemSpec& system) {
    CheckRun run;
    std::optional<ProofScript> parsed;
    try {
        parsed = parse_proof_script(text);
    } catch (const ParseError& e) {
        run.exit_code = 2;
        run.message = std::string("parse error: ") + e.what();
        return run;
    } catch (const CheckException& e) {
        run.exit_code = 1;
        run.error = e.error();
        run.message = "rejected: " + e.error().render();
        return run;
    }
    const ProofScript& script = *parsed;
    if (script.lang != system.language) {
        run.exit_code = 1;
        run.error = CheckError{CheckErrorKind::LanguageViolation,
                               {},
                               std::string("script declares ") + language_name(script.lang) + " but " +
                                   system.name + " works in " + language_name(system.language)};
        run.message = "rejected: " + run.error->render();
        return run;
    }
    CheckResult result = check_proof(script.proof, system);
    if (!result.ok()) {
        run.exit_code = 1;
        run.error = result.error();
        run.message = "rejected: " + result.error().render();
        return run;
    }
    if (script.declared_sequent && !(*script.declared_sequent == result.judgment())) {
        run.exit_code = 1;
        run.error = CheckError{CheckErrorKind::PremiseShapeMismatch,
                               {},
                               "proof checks to " + render_judgment(result.judgment()) +
                                   " but the script declares " + render_judgment(*script.declared_sequent)};
        run.message = "rejected: " + run.error->render();
        return run;
    }
    run.exit_code = 0;
    run.judgment = result.judgment();
    run.message = "accepted: " + render_judgment(result.judgment());
    return run;
}

CheckRun run_check_file(const std::filesystem::path& file, const SystemSpec& system) {
    try {
        return run_check_text(read_file(file), system);
    } catch (const std::runtime_error& e) {
        CheckRun run;
        run.exit_code = 2;
        run.message = e.what();
        return run;
    }
}

std::vector<CorpusEntry> load_manifest(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());
    std::filesystem::path base = manifest.parent_path();
    std::vector<CorpusEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t bar = t.find('|', start);
            if (bar == std::string::npos) {
                fields.push_back(trim(t.substr(start)));
                break;
            }
            fields.push_back(trim(t.substr(start, bar - start)));
            start = bar + 1;
        }
        if (fields.size() != 5)
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expected 'id | system | expect | path | anchor'");
        CorpusEntry entry;
        entry.id = fields[0];
        entry.system = fields[1];
        const std::string& expect = fields[2];
        if (expect == "ACCEPT") {
            entry.expect.accept = true;
        } else if (expect.rfind("REJECT(", 0) == 0 && expect.back() == ')') {
            std::string kind = expect.substr(7, expect.size() - 8);
            auto parsed = check_error_kind_from_name(kind);
            if (!parsed)
                throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                         ": unknown error kind '" + kind + "'");
            entry.expect.accept = false;
            entry.expect.reject_kind = *parsed;
        } else {
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expect must be ACCEPT or REJECT(Kind)");
        }
        entry.path = base / fields[3];
        entry.anchor = fields[4];
        entries.push_back(std::move(entry));
    }
    return entries;
}

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, const std::string& filter) {
    CorpusReport report;
    for (const CorpusEntry& entry : entries) {
        if (!filter.empty() && entry.id.find(filter) == std::string::npos) continue;
        CorpusEntryResult result;
        result.entry = entry;
        try {
            const SystemSpec& system = builtin_system(entry.system);
            CheckRun run = run_check_file(entry.path, system);
            if (entry.expect.accept) {
                if (run.exit_code == 0) {
                    result.passed = true;
                    result.detail = render_judgment(*run.judgment);
                } else {
                    result.detail = "expected ACCEPT, got: " + run.message;
                }
            } else {
                if (run.exit_code == 1 && run.error && run.error->kind == *entry.expect.reject_kind) {
                    result.passed = true;
                    result.detail = run.error->render();
                } else {
                    result.detail = "expected " + entry.expect.render() + ", got: " + run.message;
                }
            }
        } catch (const std::exception& e) {
            result.detail = std::string("error: ") + e.what();
        }
        if (result.passed)
            ++report.passed;
        else
            ++report.failed;
        report.results.push_back(std::move(result));
    }
    return report;
}

std::string CorpusReport::render() const {
    std::ostringstream out;
    for (const CorpusEntryResult& r : results) {
        out << (r.passed ? "ok   " : "FAIL ") << r.entry.id << " | " << r.entry.system << " | "
            << r.entry.expect.render() << " | " << r.detail << '\n';
    }
    out << "corpus: " << results.size() << " entries, " << passed << " passed, " << failed << " failed\n";
    return out.str();
}

}  // namespace iotalog
