#include "workbench/specfile.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wb::specfile {

namespace {

struct LineScanner {
    std::istringstream in;
    std::string line;
    int lineno = 0;

    explicit LineScanner(const std::string& text) : in(text) {}

    bool next() {
        while (std::getline(in, line)) {
            ++lineno;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            return true;
        }
        return false;
    }
};

[[noreturn]] void bad(int line, int col, const std::string& msg) {
    throw ParseError(line, col, msg);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> out;
    std::string t;
    while (ls >> t) out.push_back(t);
    return out;
}

int column_of(const std::string& line, const std::string& token, int occurrence) {
    size_t pos = 0;
    for (int i = 0; i <= occurrence; ++i) {
        pos = line.find(token, pos);
        if (pos == std::string::npos) return 1;
        if (i < occurrence) pos += token.size();
    }
    return int(pos) + 1;
}

} // namespace

// ---- machine files --------------------------------------------------------------

TmFile parse_tm(const std::string& text) {
    TmFile f;
    std::map<std::string, uint32_t> ids;
    auto state_id = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        uint32_t id = (uint32_t)f.state_names.size();
        ids.emplace(name, id);
        f.state_names.push_back(name);
        return id;
    };
    struct RawRule {
        uint32_t s;
        uint8_t bit;
        std::string target;
        uint8_t write;
        wb::tm::Dir dir;
        int line;
    };
    std::vector<RawRule> raw;
    std::string start_name;
    bool have_start = false;
    f.machine.halt_mode = wb::tm::HaltMode::ExplicitHaltState;

    LineScanner sc(text);
    while (sc.next()) {
        auto tk = tokens(sc.line);
        if (tk[0] == "start:") {
            if (tk.size() != 2) bad(sc.lineno, 1, "start: wants one state name");
            start_name = tk[1];
            have_start = true;
        } else if (tk[0] == "halt:") {
            if (tk.size() != 2 || (tk[1] != "explicit" && tk[1] != "rolloff"))
                bad(sc.lineno, 1, "halt: wants explicit or rolloff");
            f.machine.halt_mode = tk[1] == "explicit" ? wb::tm::HaltMode::ExplicitHaltState
                                                      : wb::tm::HaltMode::LeftRollOff;
        } else if (tk[0] == "edge:") {
            if (tk.size() != 2 || (tk[1] != "extend" && tk[1] != "halt"))
                bad(sc.lineno, 1, "edge: wants extend or halt");
            f.machine.extend_right = tk[1] == "extend";
        } else if (tk[0] == "rule") {
            if (tk.size() != 7 || tk[3] != "->")
                bad(sc.lineno, 1, "rule <state> <bit> -> <state> <bit> <L|R>");
            if (tk[2] != "0" && tk[2] != "1")
                bad(sc.lineno, column_of(sc.line, tk[2], 1), "read bit must be 0 or 1");
            if (tk[5] != "0" && tk[5] != "1")
                bad(sc.lineno, column_of(sc.line, tk[5], tk[2] == tk[5] ? 2 : 1),
                    "write bit must be 0 or 1");
            if (tk[6] != "L" && tk[6] != "R")
                bad(sc.lineno, column_of(sc.line, tk[6], 0), "direction must be L or R");
            RawRule r;
            r.s = state_id(tk[1]);
            r.bit = tk[2] == "1";
            r.target = tk[4];
            r.write = tk[5] == "1";
            r.dir = tk[6] == "L" ? wb::tm::Dir::L : wb::tm::Dir::R;
            r.line = sc.lineno;
            raw.push_back(r);
        } else {
            bad(sc.lineno, 1, "unknown directive '" + tk[0] + "'");
        }
    }
    if (!have_start) bad(sc.lineno, 1, "missing start: line");
    // every named non-halt state needs both rules
    for (const RawRule& r : raw)
        if (r.target != "halt") state_id(r.target);
    uint32_t n = (uint32_t)f.state_names.size();
    f.machine.state_count = n;
    f.machine.start = state_id(start_name);
    f.machine.rules.assign(size_t(n) * 2, wb::tm::Rule{n, 0, wb::tm::Dir::R});
    std::vector<bool> defined(size_t(n) * 2, false);
    for (const RawRule& r : raw) {
        uint32_t target = r.target == "halt" ? n : ids.at(r.target);
        if (r.target == "halt" && f.machine.halt_mode != wb::tm::HaltMode::ExplicitHaltState)
            bad(r.line, 1, "halt target needs halt: explicit");
        size_t idx = size_t(r.s) * 2 + r.bit;
        if (defined[idx]) bad(r.line, 1, "duplicate rule");
        defined[idx] = true;
        f.machine.rules[idx] = wb::tm::Rule{target, r.write, r.dir};
    }
    for (size_t i = 0; i < defined.size(); ++i)
        if (!defined[i])
            fail("IncompleteMachine", "state " + f.state_names[i / 2] + " lacks a rule for bit " +
                                          std::to_string(i % 2));
    f.machine.validate();
    return f;
}

std::string print_tm(const TmFile& f) {
    std::ostringstream os;
    os << "start: " << f.state_names[f.machine.start] << "\n";
    os << "halt: "
       << (f.machine.halt_mode == wb::tm::HaltMode::ExplicitHaltState ? "explicit" : "rolloff")
       << "\n";
    os << "edge: " << (f.machine.extend_right ? "extend" : "halt") << "\n";
    for (uint32_t s = 0; s < f.machine.state_count; ++s)
        for (uint8_t bit = 0; bit <= 1; ++bit) {
            const auto& r = f.machine.rule(s, bit);
            os << "rule " << f.state_names[s] << ' ' << int(bit) << " -> "
               << (r.next == f.machine.halt_state() ? "halt" : f.state_names[r.next]) << ' '
               << int(r.write) << ' ' << wb::tm::dir_char(r.dir) << "\n";
        }
    return os.str();
}

// ---- CA rule files -----------------------------------------------------------

CaFile parse_ca(const std::string& text) {
    CaFile f;
    bool have_alphabet = false;
    std::vector<std::pair<std::array<uint32_t, 4>, int>> rules;
    LineScanner sc(text);
    while (sc.next()) {
        auto tk = tokens(sc.line);
        if (tk[0] == "alphabet:") {
            if (tk.size() != 2) bad(sc.lineno, 1, "alphabet: wants a count");
            f.alphabet = (uint32_t)std::stoul(tk[1]);
            if (f.alphabet < 1 || f.alphabet > 10)
                bad(sc.lineno, 1, "alphabet size must be 1..10 (digit symbols)");
            have_alphabet = true;
        } else if (tk[0] == "rule") {
            if (tk.size() != 4 || tk[2] != "->" || tk[1].size() != 3 || tk[3].size() != 1)
                bad(sc.lineno, 1, "rule <lsr> -> <s'>");
            auto digit = [&](char ch, int col) -> uint32_t {
                if (ch < '0' || ch > '9') bad(sc.lineno, col, "symbols are digits");
                return uint32_t(ch - '0');
            };
            std::array<uint32_t, 4> r{digit(tk[1][0], 6), digit(tk[1][1], 7), digit(tk[1][2], 8),
                                      digit(tk[3][0], (int)sc.line.size())};
            rules.emplace_back(r, sc.lineno);
        } else {
            bad(sc.lineno, 1, "unknown directive '" + tk[0] + "'");
        }
    }
    if (!have_alphabet) bad(sc.lineno, 1, "missing alphabet: line");
    uint32_t a = f.alphabet;
    f.table.assign(size_t(a) * a * a, 0);
    std::vector<bool> defined(f.table.size(), false);
    for (auto& [r, line] : rules) {
        for (uint32_t v : r)
            if (v >= a) bad(line, 1, "symbol outside the alphabet");
        size_t idx = (size_t(r[0]) * a + r[1]) * a + r[2];
        if (defined[idx]) bad(line, 1, "duplicate rule");
        defined[idx] = true;
        f.table[idx] = r[3];
    }
    // undefined neighbourhoods keep the centre symbol
    for (uint32_t l = 0; l < a; ++l)
        for (uint32_t s = 0; s < a; ++s)
            for (uint32_t r = 0; r < a; ++r) {
                size_t idx = (size_t(l) * a + s) * a + r;
                if (!defined[idx]) f.table[idx] = s;
            }
    if (f.table[0] != 0) fail("BadRule", "quiescent blank must stay blank");
    return f;
}

std::string print_ca(const CaFile& f) {
    std::ostringstream os;
    os << "alphabet: " << f.alphabet << "\n";
    uint32_t a = f.alphabet;
    for (uint32_t l = 0; l < a; ++l)
        for (uint32_t s = 0; s < a; ++s)
            for (uint32_t r = 0; r < a; ++r) {
                uint32_t v = f.table[(size_t(l) * a + s) * a + r];
                if (v != s) // canonical form prints only the changing rules
                    os << "rule " << l << s << r << " -> " << v << "\n";
            }
    return os.str();
}

wb::cellular::CA1D ca_from_file(const CaFile& f) {
    return wb::cellular::CA1D::from_table(f.alphabet, f.table);
}

wb::cellular::LifeGrid parse_life(const std::string& text, wb::cellular::Boundary b) {
    return wb::cellular::LifeGrid::parse(text, b);
}

// ---- chess files ----------------------------------------------------------------

uint8_t parse_piece(const std::string& tok, int line) {
    if (tok.size() < 3 || (tok[0] != 'W' && tok[0] != 'S') || (tok[1] != 'M' && tok[1] != 'F'))
        bad(line, 1, "piece syntax is W|S M|F <rank>, e.g. WM3");
    int rank = 0;
    try {
        rank = std::stoi(tok.substr(2));
    } catch (...) {
        bad(line, 1, "piece rank must be a number");
    }
    if (rank < 0 || rank > 63) bad(line, 1, "rank must fit 6 bits");
    uint8_t p = uint8_t(rank);
    if (tok[1] == 'F') p |= 0x40;
    if (tok[0] == 'S') p |= 0x80;
    return p;
}

std::string piece_name(uint8_t p) {
    std::string s;
    s.push_back(wb::games::lc_is_s(p) ? 'S' : 'W');
    s.push_back(wb::games::lc_gender(p) ? 'F' : 'M');
    s += std::to_string(int(wb::games::lc_rank(p)));
    return s;
}

ChessFile parse_chess(const std::string& text) {
    ChessFile f;
    LineScanner sc(text);
    while (sc.next()) {
        auto tk = tokens(sc.line);
        if (tk[0] == "board:") {
            for (size_t i = 1; i < tk.size(); ++i) f.board.push_back(parse_piece(tk[i], sc.lineno));
        } else if (tk[0] == "budget:") {
            if (tk.size() != 2) bad(sc.lineno, 1, "budget: wants a number");
            f.budget = std::stoi(tk[1]);
        } else if (tk[0] == "triple") {
            if (tk.size() != 4) bad(sc.lineno, 1, "triple <A> <B> <C>");
            f.triples.push_back(wb::games::LcTriple{parse_piece(tk[1], sc.lineno),
                                                    parse_piece(tk[2], sc.lineno),
                                                    parse_piece(tk[3], sc.lineno)});
        } else if (tk[0] == "fight") {
            if (tk.size() != 7 || tk[3] != "->" || (tk[4] != "L" && tk[4] != "R"))
                bad(sc.lineno, 1, "fight <L> <R> -> L|R <promoted> <replacement>");
            std::pair<uint8_t, uint8_t> key{parse_piece(tk[1], sc.lineno),
                                            parse_piece(tk[2], sc.lineno)};
            wb::games::FightOutcome o;
            o.right_wins = tk[4] == "R";
            o.promoted = parse_piece(tk[5], sc.lineno);
            o.replacement = parse_piece(tk[6], sc.lineno);
            auto it = std::find_if(f.fights.begin(), f.fights.end(),
                                   [&](const auto& e) { return e.first == key; });
            if (it == f.fights.end()) {
                f.fights.push_back({key, {o}});
            } else {
                it->second.push_back(o);
            }
        } else {
            bad(sc.lineno, 1, "unknown directive '" + tk[0] + "'");
        }
    }
    return f;
}

std::string print_chess(const ChessFile& f) {
    std::ostringstream os;
    if (!f.board.empty()) {
        os << "board:";
        for (uint8_t p : f.board) os << ' ' << piece_name(p);
        os << "\n";
    }
    os << "budget: " << f.budget << "\n";
    for (const auto& t : f.triples)
        os << "triple " << piece_name(t.a) << ' ' << piece_name(t.b) << ' ' << piece_name(t.c)
           << "\n";
    for (const auto& [key, outs] : f.fights)
        for (const auto& o : outs)
            os << "fight " << piece_name(key.first) << ' ' << piece_name(key.second) << " -> "
               << (o.right_wins ? 'R' : 'L') << ' ' << piece_name(o.promoted) << ' '
               << piece_name(o.replacement) << "\n";
    return os.str();
}

// ---- key files -------------------------------------------------------------------

KeyFile parse_keys(const std::string& text) {
    KeyFile f;
    LineScanner sc(text);
    while (sc.next()) {
        auto tk = tokens(sc.line);
        if (tk.size() != 2) bad(sc.lineno, 1, "key lines are '<name> <decimal>'");
        uint64_t v = 0;
        try {
            v = std::stoull(tk[1]);
        } catch (...) {
            bad(sc.lineno, column_of(sc.line, tk[1], 0), "not a decimal integer");
        }
        if (tk[0] == "n") f.n = v;
        else if (tk[0] == "p") f.p = v;
        else if (tk[0] == "q") f.q = v;
        else bad(sc.lineno, 1, "unknown key field '" + tk[0] + "'");
    }
    if (f.n == 0) fail("BadKeyFile", "key file must set n");
    f.has_secret = f.p != 0 && f.q != 0;
    if (f.has_secret) check(f.p * f.q == f.n, "BadKeyFile", "n must equal p*q");
    return f;
}

std::string print_keys(const KeyFile& f) {
    std::ostringstream os;
    os << "n " << f.n << "\n";
    if (f.has_secret) os << "p " << f.p << "\n" << "q " << f.q << "\n";
    return os.str();
}

} // namespace wb::specfile
