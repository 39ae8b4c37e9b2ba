#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dexp/corpus.hpp"
#include "dexp/index.hpp"
#include "oracle/oracle.hpp"

namespace testing_support {

/// Scratch directory removed on destruction.
class TempDir {
  public:
    TempDir() {
        std::random_device rd;
        m_path = std::filesystem::temp_directory_path() / ("dexp-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(m_path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(m_path, ec);
    }
    TempDir(TempDir const&) = delete;
    TempDir& operator=(TempDir const&) = delete;

    [[nodiscard]] std::filesystem::path const& path() const { return m_path; }

    std::string write(std::string const& name, std::string const& content) const {
        auto p = m_path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p.string();
    }

    [[nodiscard]] std::string file(std::string const& name) const { return (m_path / name).string(); }

  private:
    std::filesystem::path m_path;
};

inline std::string slurp(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<dexp::Document> to_documents(std::vector<oracle::RawDoc> const& raw) {
    std::vector<dexp::Document> docs;
    for (auto const& r : raw) {
        docs.push_back({r.id, r.text()});
    }
    return docs;
}

inline dexp::InvertedIndex index_of(std::vector<oracle::RawDoc> const& raw) {
    auto docs = to_documents(raw);
    return dexp::build_index(docs);
}

inline std::string join(std::vector<std::string> const& terms) {
    std::string s;
    for (auto const& t : terms) {
        if (!s.empty()) {
            s += ' ';
        }
        s += t;
    }
    return s;
}

}  // namespace testing_support
