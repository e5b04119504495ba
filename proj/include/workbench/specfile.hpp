#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workbench/cellular.hpp"
#include "workbench/error.hpp"
#include "workbench/games.hpp"
#include "workbench/tiling.hpp"
#include "workbench/tm.hpp"

namespace wb::specfile {

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& msg)
        : Error("SyntaxError",
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// ---- machine files -----------------------------------------------------------
// start: <state>
// halt: explicit | rolloff
// edge: extend | halt            (optional, default extend)
// rule <state> <bit> -> <state|halt> <bit> <L|R>
struct TmFile {
    wb::tm::BinaryTM machine;
    std::vector<std::string> state_names; // id -> name
};

TmFile parse_tm(const std::string& text);
std::string print_tm(const TmFile& f);

// ---- CA rule files -------------------------------------------------------------
// alphabet: <k>          (symbols are the digits 0..k-1, 0 quiescent)
// rule <l><s><r> -> <s'>
struct CaFile {
    uint32_t alphabet = 2;
    std::vector<uint32_t> table; // dense l*a*a + s*a + r
};

CaFile parse_ca(const std::string& text);
std::string print_ca(const CaFile& f);
wb::cellular::CA1D ca_from_file(const CaFile& f);

// ---- life grids (rows of . and O) ----------------------------------------------
wb::cellular::LifeGrid parse_life(const std::string& text,
                                  wb::cellular::Boundary b = wb::cellular::Boundary::Torus);

// ---- linear chess / 1d chess ----------------------------------------------------
// piece syntax: W|S M|F <rank>, e.g. WM3
// board: <piece> <piece> ...
// budget: <n>
// triple <A> <B> <C>                      (linear chess)
// fight <L> <R> -> L|R <promoted> <repl>  (1d chess)
struct ChessFile {
    std::vector<uint8_t> board;
    int budget = 8;
    std::vector<wb::games::LcTriple> triples;
    std::vector<std::pair<std::pair<uint8_t, uint8_t>, std::vector<wb::games::FightOutcome>>>
        fights;
};

ChessFile parse_chess(const std::string& text);
std::string print_chess(const ChessFile& f);
uint8_t parse_piece(const std::string& tok, int line);
std::string piece_name(uint8_t p);

// ---- key files -------------------------------------------------------------------
// decimal integers, one per line: n, p, q (p/q optional for public use)
struct KeyFile {
    uint64_t n = 0, p = 0, q = 0;
    bool has_secret = false;
};

KeyFile parse_keys(const std::string& text);
std::string print_keys(const KeyFile& f);

} // namespace wb::specfile
