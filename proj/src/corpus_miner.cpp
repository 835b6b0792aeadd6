#include "loglab/corpus_miner.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "loglab/parallel.hpp"

namespace fs = std::filesystem;

namespace loglab {

namespace {

std::string strip_xml_comments(std::string_view xml) {
    std::string out;
    out.reserve(xml.size());
    std::size_t pos = 0;
    while (pos < xml.size()) {
        const std::size_t open = xml.find("<!--", pos);
        if (open == std::string_view::npos) {
            out.append(xml.substr(pos));
            break;
        }
        out.append(xml.substr(pos, open - pos));
        const std::size_t close = xml.find("-->", open + 4);
        if (close == std::string_view::npos) break;
        pos = close + 3;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Text of the first <tag>...</tag> inside `element`, if any.
std::string_view child_text(std::string_view element, std::string_view tag) {
    const std::string open = "<" + std::string(tag) + ">";
    const std::string close = "</" + std::string(tag) + ">";
    const std::size_t a = element.find(open);
    if (a == std::string_view::npos) return {};
    const std::size_t b = element.find(close, a + open.size());
    if (b == std::string_view::npos) return {};
    return trim(element.substr(a + open.size(), b - a - open.size()));
}

bool read_file(const fs::path& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return false;
    out = std::move(ss).str();
    return true;
}

std::string repo_name(const fs::path& root) {
    fs::path p = root.lexically_normal();
    if (p.filename().empty()) p = p.parent_path();
    return p.filename().string();
}

bool excluded(const std::string& rel, const std::vector<std::string>& globs) {
    for (const auto& g : globs) {
        if (::fnmatch(g.c_str(), rel.c_str(), 0) == 0) return true;
    }
    return false;
}

struct RepoOutcome {
    RepoManifest manifest;
    std::vector<MethodRecord> methods;
    std::vector<std::string> warnings;
    std::size_t file_errors = 0;
    bool readable = true;
};

struct RepoFiles {
    std::vector<fs::path> poms;
    std::vector<fs::path> java;
};

RepoFiles list_files(const fs::path& root, const MineOptions& options) {
    RepoFiles files;
    auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied);
    for (auto end = fs::recursive_directory_iterator(); it != end; ++it) {
        const fs::path& p = it->path();
        if (it->is_directory()) {
            if (p.filename() == ".git") it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file()) continue;
        if (p.filename() == "pom.xml") {
            files.poms.push_back(p);
        } else if (p.extension() == ".java") {
            const std::string rel = p.lexically_relative(root).generic_string();
            if (!excluded(rel, options.exclude_globs)) files.java.push_back(p);
        }
    }
    std::sort(files.poms.begin(), files.poms.end());
    std::sort(files.java.begin(), files.java.end());
    return files;
}

RepoOutcome process_repo(const fs::path& root, const MineOptions& options) {
    RepoOutcome out;
    out.manifest.repo = repo_name(root);
    out.manifest.root = root;
    RepoFiles files;
    try {
        if (!fs::is_directory(root)) throw fs::filesystem_error("not a directory", root, std::error_code());
        files = list_files(root, options);
    } catch (const fs::filesystem_error& e) {
        out.readable = false;
        out.warnings.push_back("skipping repo " + root.string() + ": " + e.what());
        return out;
    }
    out.manifest.java_file_count = files.java.size();
    for (const auto& pom : files.poms) {
        std::string text;
        if (!read_file(pom, text)) {
            out.warnings.push_back("cannot read " + pom.string());
            continue;
        }
        if (pom_declares_log4j(text)) {
            out.manifest.has_log4j = true;
            break;
        }
    }
    if (!out.manifest.has_log4j) return out;

    for (const auto& file : files.java) {
        std::string source;
        const std::string rel = file.lexically_relative(root).generic_string();
        if (!read_file(file, source)) {
            ++out.file_errors;
            out.warnings.push_back(out.manifest.repo + "/" + rel + ": unreadable");
            continue;
        }
        ExtractionResult extracted;
        try {
            extracted = extract_methods(source, out.manifest.repo, rel);
        } catch (const LexError& e) {
            ++out.file_errors;
            out.warnings.push_back(out.manifest.repo + "/" + rel + ": " + e.what());
            continue;
        }
        for (const auto& w : extracted.warnings) {
            out.warnings.push_back(out.manifest.repo + "/" + w.path + ":" + std::to_string(w.line) + ": " +
                                   w.message);
        }
        for (auto& m : extracted.methods) {
            m.log_statements = find_log_statements(m, options.receivers);
            out.methods.push_back(std::move(m));
        }
    }
    return out;
}

}  // namespace

bool pom_declares_log4j(std::string_view pom_text) {
    const std::string xml = strip_xml_comments(pom_text);
    const std::string_view v(xml);
    std::size_t pos = 0;
    while (true) {
        const std::size_t open = v.find("<dependency", pos);
        if (open == std::string_view::npos) return false;
        const std::size_t after = open + 11;
        if (after >= v.size()) return false;
        const char c = v[after];
        if (c != '>' && !std::isspace(static_cast<unsigned char>(c))) {
            pos = after;  // <dependencies>, <dependencyManagement>
            continue;
        }
        std::size_t close = v.find("</dependency>", after);
        const std::size_t next_open = v.find("<dependency", after);
        if (close == std::string_view::npos) close = next_open == std::string_view::npos ? v.size() : next_open;
        const std::string_view element = v.substr(after, close - after);
        const std::string_view group = child_text(element, "groupId");
        const std::string_view artifact = child_text(element, "artifactId");
        if (group == "log4j" || group == "org.apache.logging.log4j") return true;
        if (artifact == "log4j" || artifact == "log4j-core" || artifact == "log4j-api") return true;
        pos = close;
    }
}

RepoManifest scan_repo(const fs::path& root, const MineOptions& options, std::vector<std::string>* warnings) {
    RepoManifest manifest;
    manifest.repo = repo_name(root);
    manifest.root = root;
    try {
        const RepoFiles files = list_files(root, options);
        manifest.java_file_count = files.java.size();
        for (const auto& pom : files.poms) {
            std::string text;
            if (!read_file(pom, text)) {
                if (warnings) warnings->push_back("cannot read " + pom.string());
                continue;
            }
            if (pom_declares_log4j(text)) {
                manifest.has_log4j = true;
                break;
            }
        }
    } catch (const fs::filesystem_error& e) {
        if (warnings) warnings->push_back(e.what());
    }
    return manifest;
}

MiningSummary mine(const std::vector<fs::path>& roots, MethodSink& sink, const MineOptions& options) {
    MiningSummary summary;
    std::vector<fs::path> ordered = roots;
    std::sort(ordered.begin(), ordered.end());

    const std::size_t batch = std::max<std::size_t>(1, static_cast<std::size_t>(options.jobs) * 2);
    for (std::size_t from = 0; from < ordered.size(); from += batch) {
        const std::size_t count = std::min(batch, ordered.size() - from);
        std::vector<RepoOutcome> outcomes(count);
        parallel_for(count, options.jobs,
                     [&](std::size_t i) { outcomes[i] = process_repo(ordered[from + i], options); });
        for (auto& o : outcomes) {
            summary.warnings.insert(summary.warnings.end(), o.warnings.begin(), o.warnings.end());
            summary.file_errors += o.file_errors;
            if (!o.readable || !o.manifest.has_log4j) {
                ++summary.repos_skipped;
                summary.repos.push_back(std::move(o.manifest));
                continue;
            }
            ++summary.repos_kept;
            summary.java_files += o.manifest.java_file_count;
            for (const auto& m : o.methods) {
                sink.append(m);
                ++summary.methods;
                if (!m.log_statements.empty()) ++summary.methods_with_log;
            }
            summary.repos.push_back(std::move(o.manifest));
        }
    }
    return summary;
}

}  // namespace loglab
