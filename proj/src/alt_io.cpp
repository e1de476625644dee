#include "nilgen/alt_io.hpp"

#include "nilgen/error.hpp"

#include <charconv>
#include <sstream>

namespace nilgen {

namespace {

std::string_view trim(std::string_view s) {
    const auto hash = s.find('#');
    if (hash != std::string_view::npos) s = s.substr(0, hash);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

struct Line {
    std::size_t number;
    std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        const std::string_view t = trim(raw);
        if (!t.empty()) out.push_back({number, t});
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) { throw Error(Errc::ParseError, what, line); }

std::uint64_t number(std::string_view tok, std::size_t line) {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
    return x;
}

std::uint64_t keyed(std::string_view tok, std::string_view key, std::size_t line) {
    if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
        fail(line, "expected " + std::string(key) + "=<int>");
    return number(tok.substr(key.size() + 1), line);
}

FVector residues(const Field& f, std::span<const std::string_view> toks, std::size_t count, std::size_t line) {
    if (toks.size() != count)
        fail(line, "expected " + std::to_string(count) + " residues, got " + std::to_string(toks.size()));
    FVector v;
    for (auto t : toks) {
        const std::uint64_t x = number(t, line);
        if (x >= f.p()) fail(line, "residue " + std::to_string(x) + " is not below p=" + std::to_string(f.p()));
        v.push_back(static_cast<Residue>(x));
    }
    return v;
}

// "elem : v... | w..." with the tokens after "elem".
GroupElement element_line(const AltSystem& host, const std::vector<std::string_view>& t, std::size_t line) {
    if (t.size() < 2 || t[1] != ":") fail(line, "expected 'elem : <v> | <w>'");
    std::size_t bar = 2;
    while (bar < t.size() && t[bar] != "|") ++bar;
    if (bar == t.size()) fail(line, "element line without '|'");
    const std::span<const std::string_view> all(t);
    return {residues(host.field(), all.subspan(2, bar - 2), host.dim_v(), line),
            residues(host.field(), all.subspan(bar + 1), host.n(), line)};
}

FVector column_line(const Field& f, const std::vector<std::string_view>& t, std::size_t rows, std::size_t line) {
    if (t.size() < 2 || t[1] != ":") fail(line, "expected 'col : <x_1> ... <x_m>'");
    return residues(f, std::span<const std::string_view>(t).subspan(2), rows, line);
}

std::string join(const FVector& v) {
    std::string s;
    for (Residue x : v) s += ' ' + std::to_string(x);
    return s;
}

} // namespace

const std::vector<GroupElement>& AltDocument::set(std::string_view name) const {
    for (const auto& [k, v] : sets)
        if (k == name) return v;
    throw Error(Errc::ParseError, "document has no element set '" + std::string(name) + "'");
}

const std::vector<FVector>& AltDocument::map(std::string_view name) const {
    for (const auto& [k, v] : maps)
        if (k == name) return v;
    throw Error(Errc::ParseError, "document has no map '" + std::string(name) + "'");
}

AltDocument parse_document(std::string_view text) {
    const std::vector<Line> lines = content_lines(text);
    if (lines.empty()) fail(1, "empty input, expected 'ALT v1'");
    if (lines[0].text != "ALT v1" && tokens(lines[0].text) != std::vector<std::string_view>{"ALT", "v1"})
        fail(lines[0].number, "expected 'ALT v1'");
    if (lines.size() < 2) fail(lines[0].number + 1, "missing 'p=<int> n=<int> dimV=<int>' line");

    const auto head = tokens(lines[1].text);
    const std::size_t hl = lines[1].number;
    if (head.size() != 3) fail(hl, "expected 'p=<int> n=<int> dimV=<int>'");
    const std::uint64_t p = keyed(head[0], "p", hl);
    const std::uint64_t n = keyed(head[1], "n", hl);
    const std::uint64_t dim = keyed(head[2], "dimV", hl);
    if (p >= (1u << 15)) throw Error(Errc::BadPrime, "modulus " + std::to_string(p) + " is too large", hl);
    if (dim > 4096 || n > (1u << 20)) fail(hl, "dimensions too large");
    std::optional<Field> field;
    try {
        field.emplace(static_cast<std::uint32_t>(p));
    } catch (const Error& e) {
        throw Error(e.code(), "modulus " + std::to_string(p) + " is not an odd prime below 32768", hl);
    }
    AltDocument doc{AltSystem(*field, n, dim), std::nullopt, {}, {}};

    std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
    enum class Section { Beta, Set, Map } section = Section::Beta;
    std::size_t idx = 2;
    if (idx < lines.size() && tokens(lines[idx].text).front() == "meta") {
        const auto t = tokens(lines[idx].text);
        if (t.size() != 3) fail(lines[idx].number, "expected 'meta seed=<int> rounds=<int>'");
        doc.meta = AltMeta{keyed(t[1], "seed", lines[idx].number), keyed(t[2], "rounds", lines[idx].number)};
        ++idx;
    }
    for (; idx < lines.size(); ++idx) {
        const std::size_t ln = lines[idx].number;
        const auto t = tokens(lines[idx].text);
        if (t[0] == "beta") {
            if (section != Section::Beta) fail(ln, "beta line after an element set or map");
            if (t.size() < 4 || t[3] != ":") fail(ln, "expected 'beta <i> <j> : <k_1> ... <k_n>'");
            const std::uint64_t i = number(t[1], ln), j = number(t[2], ln);
            if (i >= dim || j >= dim) fail(ln, "basis index out of range for dimV=" + std::to_string(dim));
            const FVector value = residues(*field, std::span<const std::string_view>(t).subspan(4), n, ln);
            if (i == j) {
                if (!is_zero(value)) throw Error(Errc::NotAlternating, "beta(e_i, e_i) must vanish", ln);
                fail(ln, "diagonal entry listed");
            }
            if (i > j) fail(ln, "entries must have i < j");
            if (seen[i][j]) fail(ln, "duplicate entry for (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            seen[i][j] = true;
            doc.sys.set_entry(i, j, value);
        } else if (t[0] == "set" || t[0] == "map") {
            if (t.size() != 2) fail(ln, "expected '" + std::string(t[0]) + " <name>'");
            if (t[0] == "set") {
                section = Section::Set;
                doc.sets.emplace_back(std::string(t[1]), std::vector<GroupElement>{});
            } else {
                section = Section::Map;
                doc.maps.emplace_back(std::string(t[1]), std::vector<FVector>{});
            }
        } else if (t[0] == "elem") {
            if (section != Section::Set) fail(ln, "element line outside a 'set' section");
            doc.sets.back().second.push_back(element_line(doc.sys, t, ln));
        } else if (t[0] == "col") {
            if (section != Section::Map) fail(ln, "column line outside a 'map' section");
            doc.maps.back().second.push_back(column_line(*field, t, dim, ln));
        } else if (t[0] == "meta") {
            fail(ln, "meta line must directly follow the header");
        } else {
            fail(ln, "unrecognized line '" + std::string(lines[idx].text) + "'");
        }
    }
    return doc;
}

AltSystem parse_system(std::string_view text) { return parse_document(text).sys; }

std::string serialize_system(const AltSystem& sys, const std::optional<AltMeta>& meta) {
    std::ostringstream out;
    out << "ALT v1\np=" << sys.p() << " n=" << sys.n() << " dimV=" << sys.dim_v() << '\n';
    if (meta) out << "meta seed=" << meta->seed << " rounds=" << meta->rounds << '\n';
    for (std::size_t i = 0; i < sys.dim_v(); ++i)
        for (std::size_t j = i + 1; j < sys.dim_v(); ++j) {
            const auto e = sys.entry(i, j);
            const FVector v(e.begin(), e.end());
            if (!is_zero(v)) out << "beta " << i << ' ' << j << " :" << join(v) << '\n';
        }
    return out.str();
}

std::string serialize_elements(const std::vector<GroupElement>& xs) {
    std::string out;
    for (const auto& x : xs) out += "elem :" + join(x.v) + " |" + join(x.w) + '\n';
    return out;
}

std::string serialize_columns(const FMatrix& m) {
    std::string out;
    for (std::size_t c = 0; c < m.cols(); ++c) out += "col :" + join(m.column(c)) + '\n';
    return out;
}

std::string serialize_document(const AltDocument& doc) {
    std::string out = serialize_system(doc.sys, doc.meta);
    for (const auto& [name, xs] : doc.sets) out += "set " + name + '\n' + serialize_elements(xs);
    for (const auto& [name, cols] : doc.maps) {
        out += "map " + name + '\n';
        for (const auto& c : cols) out += "col :" + join(c) + '\n';
    }
    return out;
}

std::vector<GroupElement> parse_elements(std::string_view text, const AltSystem& host) {
    std::vector<GroupElement> out;
    for (const Line& l : content_lines(text)) {
        const auto t = tokens(l.text);
        if (t[0] != "elem") fail(l.number, "expected an 'elem' line");
        out.push_back(element_line(host, t, l.number));
    }
    return out;
}

std::vector<FVector> parse_columns(std::string_view text, const Field& f, std::size_t rows) {
    std::vector<FVector> out;
    for (const Line& l : content_lines(text)) {
        const auto t = tokens(l.text);
        if (t[0] != "col") fail(l.number, "expected a 'col' line");
        out.push_back(column_line(f, t, rows, l.number));
    }
    return out;
}

} // namespace nilgen
