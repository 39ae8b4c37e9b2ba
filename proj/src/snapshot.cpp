#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "dexp/error.hpp"
#include "dexp/index.hpp"

namespace dexp {

namespace {

constexpr std::array<char, 5> magic = {'X', 'I', 'D', 'X', '1'};

class Writer {
  public:
    explicit Writer(std::ostream& out) : m_out(out) {}

    void u8(std::uint8_t v) { m_out.put(static_cast<char>(v)); }

    void u32(std::uint32_t v) {
        char b[4];
        for (int i = 0; i < 4; ++i) {
            b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        }
        m_out.write(b, 4);
    }

    void u64(std::uint64_t v) {
        char b[8];
        for (int i = 0; i < 8; ++i) {
            b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        }
        m_out.write(b, 8);
    }

    void str(std::string const& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        m_out.write(s.data(), static_cast<std::streamsize>(s.size()));
    }

  private:
    std::ostream& m_out;
};

class Reader {
  public:
    explicit Reader(std::istream& in) : m_in(in) {}

    void bytes(char* dst, std::size_t n) {
        m_in.read(dst, static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(m_in.gcount()) != n) {
            throw FormatError("index snapshot is truncated");
        }
    }

    std::uint8_t u8() {
        char c = 0;
        bytes(&c, 1);
        return static_cast<std::uint8_t>(c);
    }

    std::uint32_t u32() {
        unsigned char b[4];
        bytes(reinterpret_cast<char*>(b), 4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) {
            v = (v << 8) | b[i];
        }
        return v;
    }

    std::uint64_t u64() {
        unsigned char b[8];
        bytes(reinterpret_cast<char*>(b), 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) {
            v = (v << 8) | b[i];
        }
        return v;
    }

    std::string str() {
        std::string s(u32(), '\0');
        bytes(s.data(), s.size());
        return s;
    }

  private:
    std::istream& m_in;
};

}  // namespace

void write_index(InvertedIndex const& index, std::ostream& out) {
    auto const& parts = index.parts();
    Writer w(out);
    out.write(magic.data(), magic.size());
    w.u8(snapshot_version);

    w.u32(static_cast<std::uint32_t>(parts.analyzer.stopwords.size()));
    for (auto const& s : parts.analyzer.stopwords) {
        w.str(s);
    }

    w.u64(parts.doc_ids.size());
    for (std::size_t d = 0; d < parts.doc_ids.size(); ++d) {
        w.str(parts.doc_ids[d]);
        w.u32(parts.doc_lengths[d]);
    }

    w.u64(parts.terms.size());
    for (TermId t = 0; t < parts.terms.size(); ++t) {
        w.str(parts.terms[t]);
        auto list = index.postings(t);
        w.u32(static_cast<std::uint32_t>(list.size()));
        w.u64(index.cf(t));
        for (auto const& p : list) {
            w.u32(p.doc);
            w.u32(p.tf);
        }
    }
    if (!out) {
        throw std::runtime_error("failed writing index snapshot");
    }
}

void save_index(InvertedIndex const& index, std::string const& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    write_index(index, out);
}

InvertedIndex read_index(std::istream& in) {
    Reader r(in);
    std::array<char, 5> head{};
    r.bytes(head.data(), head.size());
    if (head != magic) {
        throw FormatError("not an index snapshot (bad magic)");
    }
    auto version = r.u8();
    if (version != snapshot_version) {
        throw FormatError(fmt::format("unsupported index snapshot version {} (expected {})", version,
                                      snapshot_version));
    }

    IndexParts parts;
    auto n_stop = r.u32();
    for (std::uint32_t i = 0; i < n_stop; ++i) {
        parts.analyzer.stopwords.insert(r.str());
    }

    auto n_docs = r.u64();
    parts.doc_ids.reserve(n_docs);
    parts.doc_lengths.reserve(n_docs);
    for (std::uint64_t d = 0; d < n_docs; ++d) {
        parts.doc_ids.push_back(r.str());
        parts.doc_lengths.push_back(r.u32());
    }

    auto n_terms = r.u64();
    parts.terms.reserve(n_terms);
    parts.offsets.reserve(n_terms + 1);
    parts.offsets.push_back(0);
    std::vector<std::uint64_t> stored_cf;
    stored_cf.reserve(n_terms);
    for (std::uint64_t t = 0; t < n_terms; ++t) {
        parts.terms.push_back(r.str());
        auto df = r.u32();
        stored_cf.push_back(r.u64());
        for (std::uint32_t i = 0; i < df; ++i) {
            Posting p;
            p.doc = r.u32();
            p.tf = r.u32();
            parts.postings.push_back(p);
        }
        parts.offsets.push_back(parts.postings.size());
    }

    try {
        InvertedIndex index(std::move(parts));
        for (TermId t = 0; t < index.num_terms(); ++t) {
            if (index.cf(t) != stored_cf[t]) {
                throw FormatError("index snapshot is corrupt: cf mismatch for term " + index.term(t));
            }
        }
        return index;
    } catch (std::invalid_argument const& e) {
        throw FormatError(std::string("index snapshot is corrupt: ") + e.what());
    }
}

InvertedIndex load_index(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open index snapshot: " + path);
    }
    return read_index(in);
}

}  // namespace dexp
