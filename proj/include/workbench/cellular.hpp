#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "workbench/error.hpp"

namespace wb::cellular {

// Radius-1 one-dimensional cellular automaton. Symbol 0 is the quiescent
// blank; cells outside the row read as blank.
struct CA1D {
    uint32_t alphabet = 2;
    std::function<uint32_t(uint32_t, uint32_t, uint32_t)> rule;

    static CA1D from_table(uint32_t alphabet, std::vector<uint32_t> table); // l*a*a + s*a + r
};

using Row = std::vector<uint32_t>;

Row ca_step(const CA1D& ca, const Row& row);

// All intermediate rows, including the input row (steps+1 rows).
std::vector<Row> ca_run(const CA1D& ca, const Row& row, uint32_t steps);

// ---- Game of Life -----------------------------------------------------------

enum class Boundary : uint8_t { Torus, DeadEdge };

struct LifeGrid {
    uint32_t width = 0;
    uint32_t height = 0;
    Boundary boundary = Boundary::Torus;
    std::vector<uint8_t> cells; // row-major, 1 = alive

    uint8_t at(int64_t x, int64_t y) const;
    void set(uint32_t x, uint32_t y, uint8_t v) { cells[y * width + x] = v; }

    static LifeGrid parse(const std::string& text, Boundary b = Boundary::Torus);
    std::string print() const; // rows of '.' and 'O'
};

// One synchronous update: live with 2 or 3 live neighbours, birth on 3.
LifeGrid life_step(const LifeGrid& g);

LifeGrid life_translate(const LifeGrid& g, int64_t dx, int64_t dy); // torus shift

// ---- the ww-recognizer automaton (two signals, copy field) ------------------

struct WwCaResult {
    bool accept = false;
    uint64_t depth = 0; // steps until the verdict signal appears
};

// Built-in CA deciding x = ww over {a,b}. Requires |x| >= 2; odd lengths are
// rejected by the signal-collision parity. Depth is O(|x|).
WwCaResult ww_ca_recognizer(const std::string& word);

// The underlying automaton, exposed so the CLI can trace it.
struct WwCa {
    CA1D ca;
    Row encode(const std::string& word) const;
    // verdict carried by any cell: 0 = running, 1 = accept, 2 = reject
    int verdict(const Row& row) const;
    std::string render(const Row& row) const;
};
WwCa make_ww_ca();

} // namespace wb::cellular
