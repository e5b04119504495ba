// Desk-scale workbench for machines, games, reductions and randomized
// procedures. Every randomized command is reproducible from --seed; traces
// switch to one JSON object per line with --json. Exit codes: 0 success,
// 1 for a negative domain answer (reject / composite / loss), 2 for errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "workbench/batcher.hpp"
#include "workbench/cellular.hpp"
#include "workbench/cli_commands.hpp"
#include "workbench/crypto.hpp"
#include "workbench/error.hpp"
#include "workbench/games.hpp"
#include "workbench/ikeno.hpp"
#include "workbench/kolmogorov.hpp"
#include "workbench/numtheory.hpp"
#include "workbench/randomized.hpp"
#include "workbench/specfile.hpp"
#include "workbench/sumcheck.hpp"
#include "workbench/tiling.hpp"
#include "workbench/tm.hpp"

using namespace wb;

namespace {

struct Ctx {
    uint64_t seed = 0;
    bool json = false;
    uint64_t budget = 0; // WORKBENCH_BUDGET override, 0 = defaults
    int exit_code = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    check(bool(in), "NoSuchFile", "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void trace_line(const Ctx& ctx, const std::string& tag, uint64_t step,
                const std::string& payload) {
    if (ctx.json) {
        std::cout << "{\"" << tag << "\":" << step << ",\"state\":\"" << payload << "\"}\n";
    } else {
        std::cout << step << "  " << payload << "\n";
    }
}

uint64_t budget_or(const Ctx& ctx, uint64_t dflt) { return ctx.budget ? ctx.budget : dflt; }

// ---- subcommand bodies ------------------------------------------------------

void cmd_run_tm(Ctx& ctx, const std::string& file, const std::string& input, uint64_t steps,
                bool trace) {
    specfile::TmFile f = specfile::parse_tm(slurp(file));
    Bits in = bits_from_string(input);
    if (trace) {
        auto rows = tm::tm_trace(f.machine, in, steps);
        for (size_t i = 0; i < rows.size(); ++i) {
            std::ostringstream os;
            os << bits_to_string(rows[i].cells) << " head=" << rows[i].head;
            trace_line(ctx, "step", i, os.str());
        }
    }
    tm::RunLimits lim;
    lim.steps = steps;
    tm::RunResult r = tm::tm_run(f.machine, in, lim);
    std::cout << "tape " << bits_to_string(r.tape.cells) << "\n";
    std::cout << "head " << r.tape.head << "\n";
    std::cout << (r.halted ? "halted" : "running") << " steps " << r.meters.steps << " volume "
              << r.meters.volume << " space " << r.meters.space << "\n";
}

void cmd_run_utm(Ctx& ctx, const std::string& file, const std::string& input, uint64_t cycles,
                 bool trace) {
    specfile::TmFile f = specfile::parse_tm(slurp(file));
    ikeno::ProgramImage img = ikeno::encode_program(f.machine);
    Bits in = bits_from_string(input);
    if (trace) {
        for (uint64_t c = 0; c <= cycles; ++c) {
            ikeno::UtmRun run = ikeno::utm_run(img, in, c);
            ikeno::DecodedTape dec = ikeno::decode_m_region(run.tape);
            std::ostringstream os;
            os << bits_to_string(dec.cells) << " head=" << dec.head;
            trace_line(ctx, "cycle", run.cycles, os.str());
            if (run.halted || run.cycles < c) break;
        }
    }
    ikeno::UtmRun run = ikeno::utm_run(img, in, cycles);
    std::cout << "cycles " << run.cycles << " steps " << run.steps << " "
              << (run.halted ? "halted" : "running") << "\n";
    std::cout << "tape " << run.tape.to_string() << "\n";
}

void cmd_encode_utm(Ctx&, const std::string& file, const std::string& input) {
    specfile::TmFile f = specfile::parse_tm(slurp(file));
    ikeno::ProgramImage img = ikeno::encode_program(f.machine);
    ikeno::UtmTape t = ikeno::initial_tape(img, bits_from_string(input));
    std::cout << t.to_string() << "\n";
}

void cmd_run_ca(Ctx& ctx, const std::string& file, const std::string& row, uint64_t steps) {
    specfile::CaFile f = specfile::parse_ca(slurp(file));
    cellular::CA1D ca = specfile::ca_from_file(f);
    cellular::Row r;
    for (char ch : row) {
        check(ch >= '0' && ch <= '9', "BadSymbol", "row symbols are digits");
        r.push_back(uint32_t(ch - '0'));
    }
    auto rows = cellular::ca_run(ca, r, (uint32_t)steps);
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string s;
        for (uint32_t v : rows[i]) s.push_back(char('0' + v));
        trace_line(ctx, "step", i, s);
    }
}

void cmd_life(Ctx& ctx, const std::string& file, uint64_t steps, const std::string& boundary,
              bool trace) {
    cellular::Boundary b =
        boundary == "dead" ? cellular::Boundary::DeadEdge : cellular::Boundary::Torus;
    cellular::LifeGrid g = specfile::parse_life(slurp(file), b);
    for (uint64_t i = 0; i < steps; ++i) {
        if (trace) trace_line(ctx, "step", i, g.print());
        g = cellular::life_step(g);
    }
    std::cout << g.print();
}

void cmd_ww_ca(Ctx& ctx, const std::string& word) {
    bool accept;
    uint64_t depth = 0;
    if (word.size() < 2) {
        accept = tm::is_ww(word);
    } else {
        cellular::WwCaResult r = cellular::ww_ca_recognizer(word);
        accept = r.accept;
        depth = r.depth;
    }
    std::cout << (accept ? "accept" : "reject") << " depth " << depth << "\n";
    ctx.exit_code = accept ? 0 : 1;
}

void cmd_batcher(Ctx&, const std::string& sort_file, int emit_k) {
    if (emit_k > 0) {
        batcher::CompareSchedule s = batcher::merge_schedule((uint32_t)emit_k);
        for (const auto& layer : s.layers) {
            for (size_t i = 0; i < layer.size(); ++i)
                std::cout << (i ? " " : "") << "(" << layer[i].first << "," << layer[i].second
                          << ")";
            std::cout << "\n";
        }
        return;
    }
    check(!sort_file.empty(), "UsageError", "batcher needs --sort <file> or --emit-schedule k");
    std::istringstream in(slurp(sort_file));
    std::vector<int64_t> values;
    int64_t v;
    while (in >> v) values.push_back(v);
    size_t n = values.size();
    size_t padded = 1;
    while (padded < std::max<size_t>(1, n)) padded <<= 1;
    std::vector<int64_t> arr = values;
    arr.resize(padded, std::numeric_limits<int64_t>::max());
    batcher::SortResult r = batcher::batcher_sort(arr);
    r.sorted.resize(n);
    for (size_t i = 0; i < n; ++i) std::cout << r.sorted[i] << (i + 1 < n ? ' ' : '\n');
    std::cout << "depth " << r.depth << "\n";
}

games::ValueTable solve_with_listing(Ctx& ctx, const games::GameRule& g,
                                     const std::vector<games::Position>& seeds, bool listing) {
    games::RetroOptions opt;
    opt.max_positions = budget_or(ctx, 2'000'000);
    if (listing) {
        opt.observer = [&](uint64_t cycle, const games::ValueTable& t) {
            std::ostringstream os;
            os << "solved " << t.value.size();
            trace_line(ctx, "cycle", cycle, os.str());
        };
    }
    return games::solve_retrograde(g, seeds, opt);
}

void cmd_solve_game(Ctx& ctx, const std::string& game, const std::string& file,
                    const std::string& boxes, const std::string& input, int budget,
                    bool dump_values, bool listing) {
    games::GameRule rule;
    games::Position start = 0;
    if (game == "match") {
        int a = 3, b = 3, c = 3;
        if (!boxes.empty()) {
            if (std::sscanf(boxes.c_str(), "%d,%d,%d", &a, &b, &c) != 3)
                fail("UsageError", "--boxes wants a,b,c");
        }
        rule = games::match_game();
        start = games::match_key(a, b, c, +1);
    } else if (game == "linchess") {
        specfile::ChessFile f = specfile::parse_chess(slurp(file));
        check(!f.board.empty(), "BadInput", "chess file needs a board: line");
        rule = games::linear_chess(f.triples);
        start = games::lc_key(f.board, budget > 0 ? budget : f.budget, +1);
    } else if (game == "1dchess") {
        specfile::ChessFile f = specfile::parse_chess(slurp(file));
        check(!f.board.empty(), "BadInput", "chess file needs a board: line");
        rule = games::one_d_chess(f.fights);
        start = games::lc_key(f.board, budget > 0 ? budget : f.budget, +1);
    } else if (game == "halting") {
        specfile::TmFile f = specfile::parse_tm(slurp(file));
        games::HaltingGame hg = games::halting_game(f.machine, bits_from_string(input));
        rule = hg.rule;
        start = hg.start;
    } else {
        fail("UsageError", "unknown game '" + game + "'");
    }
    games::ValueTable table = solve_with_listing(ctx, rule, {start}, listing);
    int value = table.at(start);
    if (dump_values) {
        std::vector<games::Position> keys;
        for (auto& [k, v] : table.value) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        for (games::Position k : keys)
            std::cout << k << " " << (table.value.at(k) > 0 ? "+1" : "-1") << "\n";
    }
    std::cout << "value " << (value > 0 ? "+1" : "-1") << " ("
              << (value > 0 ? "first player wins" : "second player wins") << ")\n";
    ctx.exit_code = value > 0 ? 0 : 1;
}

void cmd_tiling(Ctx& ctx, const std::string& mode, const std::string& file,
                const std::string& input, uint32_t height, const std::string& method) {
    tiling::TilingInstance inst;
    if (mode == "solve") {
        inst = tiling::parse_tiles(slurp(file));
        if (height > 0) inst.height = height;
    } else if (mode == "reduce") {
        specfile::TmFile f = specfile::parse_tm(slurp(file));
        tiling::Reduction red = tiling::tiles_from_run(f.machine, bits_from_string(input),
                                                       height ? height : 4);
        inst = red.instance;
        std::cout << "alphabet " << inst.alphabet << " tiles " << inst.tiles.size() << " width "
                  << inst.first_row.size() << "\n";
    } else {
        fail("UsageError", "tiling mode is solve or reduce");
    }
    bool ok;
    if (method == "dp") {
        ok = tiling::solve_narrow_dp(inst);
    } else {
        ok = tiling::solve_backtrack(inst, budget_or(ctx, 4'000'000)).tileable;
    }
    std::cout << (ok ? "tileable" : "not-tileable") << "\n";
    ctx.exit_code = ok ? 0 : 1;
}

void cmd_ip_demo(Ctx& ctx, uint32_t s, uint32_t c, uint64_t trials, uint32_t pbits) {
    Rng rng(ctx.seed);
    sumcheck::ArithGame g;
    g.s = s;
    g.c_max = c;
    uint64_t p = numtheory::gen_prime(std::max<uint32_t>(pbits, 17), rng);
    g.field.p = p;
    Bits x = random_bits(rng, s);
    int truth = sumcheck::v_brute(g, c, x);
    std::cout << "p " << p << " x " << bits_to_string(x) << " value " << truth << "\n";
    sumcheck::RunStats honest = sumcheck::soundness_rate(
        g, c, x, sumcheck::ProverKind::Honest, uint64_t(truth), std::min<uint64_t>(trials, 1000),
        derive_stream(ctx.seed, 1));
    std::cout << "honest accepts " << honest.accepted << "/" << honest.trials << "\n";
    sumcheck::RunStats cheat = sumcheck::soundness_rate(g, c, x, sumcheck::ProverKind::BestResponse,
                                                        uint64_t(1 - truth), trials,
                                                        derive_stream(ctx.seed, 2));
    double bound = 6.0 * double(cheat.rounds_per_trial) / double(p);
    std::cout << "false-claim accepts " << cheat.accepted << "/" << cheat.trials << " rate "
              << cheat.rate() << " (rounds " << cheat.rounds_per_trial << ", 6r/p bound " << bound
              << ")\n";
}

void cmd_prime(Ctx& ctx, const std::string& mode, uint64_t n, int bits, int rounds, bool blum) {
    Rng rng(ctx.seed);
    if (mode == "gen") {
        numtheory::PrimeGenStats st;
        uint64_t p = blum ? numtheory::gen_blum_prime(bits, rng, &st)
                          : numtheory::gen_prime(bits, rng, &st);
        std::cout << p << " (candidates " << st.candidates << ")\n";
        return;
    }
    check(mode == "test", "UsageError", "prime mode is test or gen");
    check(n >= 2, "BadInput", "test wants n >= 2");
    if (n == 2) {
        std::cout << "prime\n";
        return;
    }
    if (n % 2 == 0) {
        std::cout << "composite factor 2\n";
        ctx.exit_code = 1;
        return;
    }
    for (int i = 0; i < rounds; ++i) {
        uint64_t x = rng.range(1, n - 1);
        numtheory::MRVerdict v = numtheory::miller_rabin(x, n, n - 1);
        if (v.tag == numtheory::MRVerdict::Factor) {
            std::cout << "composite witness " << x << " factor " << v.factor << "\n";
            ctx.exit_code = 1;
            return;
        }
        if (v.tag == numtheory::MRVerdict::CompositeByFermat) {
            std::cout << "composite witness " << x << " (fermat)\n";
            ctx.exit_code = 1;
            return;
        }
    }
    std::cout << "probably-prime rounds " << rounds << "\n";
}

void cmd_keygen(Ctx& ctx, int bits) {
    Rng rng(ctx.seed);
    crypto::BlumKey key = crypto::keygen(bits, rng);
    specfile::KeyFile f;
    f.n = key.n;
    f.p = key.p;
    f.q = key.q;
    f.has_secret = true;
    std::cout << specfile::print_keys(f);
    std::cerr << "toy key, educational use only\n";
}

crypto::BlumKey key_from_file(const std::string& path) {
    specfile::KeyFile f = specfile::parse_keys(slurp(path));
    check(f.has_secret, "BadKeyFile", "this operation needs the secret key (p and q)");
    return crypto::make_blum_key(f.p, f.q);
}

void cmd_encrypt(Ctx& ctx, const std::string& keyfile, const std::string& message) {
    specfile::KeyFile f = specfile::parse_keys(slurp(keyfile));
    Rng rng(ctx.seed);
    crypto::BgCiphertext ct = crypto::bg_encrypt(bits_from_string(message), f.n, rng);
    std::cout << "x " << bits_to_string(ct.x) << "\n";
    std::cout << "s " << ct.s_last << "\n";
    std::cout << "c " << bits_to_string(ct.cipher) << "\n";
    std::cerr << "toy cipher, educational use only\n";
}

void cmd_decrypt(Ctx&, const std::string& keyfile, const std::string& x, uint64_t s,
                 const std::string& c) {
    crypto::BlumKey key = key_from_file(keyfile);
    crypto::BgCiphertext ct;
    ct.x = bits_from_string(x);
    ct.s_last = s;
    ct.cipher = bits_from_string(c);
    std::cout << bits_to_string(crypto::bg_decrypt(ct, key)) << "\n";
}

void cmd_prg(Ctx& ctx, const std::string& keyfile, uint64_t x0, uint64_t len) {
    crypto::BlumKey key = key_from_file(keyfile);
    Rng rng(ctx.seed);
    Bits mask = random_bits(rng, crypto::residue_bits(0, key.n).size());
    if (x0 == 0) x0 = rng.range(2, key.n - 1);
    std::cout << bits_to_string(crypto::prg_stream(x0, mask, key, len)) << "\n";
}

void cmd_gl_demo(Ctx& ctx, uint32_t k, double eps, uint64_t trials) {
    uint64_t hits = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_stream(ctx.seed, t));
        Bits hidden = random_bits(rng, k);
        crypto::GLOracle oracle = [&](const Bits& q) {
            int truth = crypto::hardcore_bit(hidden, q) ? -1 : 1;
            if (eps < 1.0 && rng.unit() >= (1.0 + eps) / 2.0) return -truth;
            return truth;
        };
        crypto::GLResult res = crypto::gl_invert(oracle, k, eps, rng);
        for (const Bits& cand : res.candidates)
            if (cand == hidden) {
                ++hits;
                break;
            }
    }
    std::cout << "recovered " << hits << "/" << trials << "\n";
}

void cmd_extract(Ctx& ctx, uint32_t m, uint32_t i, uint32_t n, uint32_t kk, uint64_t draws) {
    Rng rng(ctx.seed);
    // synthetic min-entropy-k source: uniform over a fixed 2^k subset
    std::vector<uint64_t> support(1ull << kk);
    for (auto& v : support) v = rng.below(1ull << m);
    double total = 0;
    for (uint64_t d = 0; d < draws; ++d) {
        Rng r2(derive_stream(ctx.seed, d + 1));
        crypto::BitMatrix Z = crypto::random_toeplitz(m, i, r2);
        crypto::BitMatrix X;
        X.rows = n;
        X.cols = m;
        X.a.resize(size_t(n) * m);
        for (uint32_t row = 0; row < n; ++row) {
            uint64_t v = support[r2.below(support.size())];
            for (uint32_t col = 0; col < m; ++col) X.set(row, col, (v >> col) & 1);
        }
        crypto::BitMatrix out = crypto::toeplitz_extract(X, Z);
        std::vector<uint64_t> hist(1ull << i, 0);
        for (uint32_t row = 0; row < n; ++row) {
            uint64_t val = 0;
            for (uint32_t col = 0; col < i; ++col) val |= uint64_t(out.at(row, col)) << col;
            ++hist[val];
        }
        double l1 = 0;
        for (uint64_t h : hist) l1 += std::fabs(double(h) / n - 1.0 / double(1ull << i));
        total += std::sqrt(double(n)) * l1;
    }
    double dist = total / double(draws);
    double bound = 4.0 * std::sqrt(double(n) * i / double(1ull << kk));
    std::cout << "distance " << dist << " bound " << bound << "\n";
    if (dist > bound) ctx.exit_code = 1;
}

void cmd_nextbit(Ctx& ctx, uint32_t n, uint64_t trials) {
    // planted flaw: an alternating-bit generator against an adjacent-parity test
    auto gen = [n](Rng& r) {
        Bits out(n);
        uint8_t phase = uint8_t(r.next() & 1);
        for (uint32_t i = 0; i < n; ++i) out[i] = uint8_t((i + phase) & 1);
        return out;
    };
    auto test = [](const Bits& b) {
        for (size_t i = 1; i < b.size(); ++i)
            if (b[i] == b[i - 1]) return false;
        return true;
    };
    crypto::HybridReport rep = crypto::nextbit_hybrid(gen, test, n, trials, ctx.seed);
    for (uint32_t i = 0; i <= n; ++i) trace_line(ctx, "hybrid", i, std::to_string(rep.p[i]));
    std::cout << "max-gap " << rep.max_gap << " at " << rep.argmax << " total " << rep.total_gap
              << " correlation " << rep.correlation << "\n";
}

void cmd_qsort_bench(Ctx& ctx, uint32_t n, uint64_t trials) {
    double sum = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_stream(ctx.seed, t));
        std::vector<int64_t> arr(n);
        for (auto& v : arr) v = int64_t(rng.next() >> 16);
        sum += double(randomized::quicksort_count(arr, rng).comparisons);
    }
    randomized::BigRat expect = randomized::expected_comparisons_exact(n);
    std::cout << "mean " << sum / double(trials) << " expected " << expect.str() << " ("
              << expect.to_double() << ")\n";
}

void cmd_hc_demo(Ctx& ctx, uint32_t n, double d, uint64_t trials) {
    uint64_t no_hc = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_stream(ctx.seed, t));
        randomized::UGraph g = randomized::gnp_graph(n, d / double(n), rng);
        if (randomized::hc_heuristic(g) == randomized::HcAnswer::NoHamiltonianCycle) ++no_hc;
    }
    double p_edge = d / double(n);
    double p_node_ok = 1.0 - std::pow(1.0 - p_edge, double(n - 1));
    double p_all_ok = std::pow(p_node_ok, double(n));
    std::cout << "no-hamilton answers " << no_hc << "/" << trials << " model "
              << (1.0 - p_all_ok) << "\n";
}

void cmd_philosophers(Ctx& ctx, uint32_t n, uint64_t max_rounds, uint64_t runs) {
    uint64_t done = 0, total_rounds = 0;
    for (uint64_t r = 0; r < runs; ++r) {
        Rng rng(derive_stream(ctx.seed, r));
        randomized::PhilosopherStats st = randomized::philosophers_sim(n, max_rounds, rng);
        if (st.all_ate) {
            ++done;
            total_rounds += st.finished_round;
        }
    }
    std::cout << "finished " << done << "/" << runs;
    if (done) std::cout << " mean-rounds " << double(total_rounds) / double(done);
    std::cout << "\n";
    if (!done) ctx.exit_code = 1;
}

void cmd_kolmogorov(Ctx& ctx, const std::string& x, const std::string& cond, uint32_t maxlen,
                    uint64_t tmax) {
    kolmogorov::VmLimits lim;
    lim.tmax = tmax;
    auto k = kolmogorov::k_bounded(bits_from_string(x), bits_from_string(cond), maxlen, lim);
    if (k) {
        std::cout << "K <= " << *k << " (within " << maxlen << " bits, " << tmax << " steps)\n";
    } else {
        std::cout << "not-found within " << maxlen << " bits\n";
        ctx.exit_code = 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    if (const char* env = std::getenv("WORKBENCH_BUDGET")) ctx.budget = std::strtoull(env, nullptr, 10);

    CLI::App app{"computation workbench: machines, games, reductions, randomized procedures"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", ctx.seed, "root seed for all randomized commands");
    app.add_flag("--json", ctx.json, "emit traces as one JSON object per line");

    // keep parsed values alive across the lambda dispatch
    struct Args {
        std::string file, input, word, boxes, mode, method, game, key, message, x, c, cond;
        uint64_t steps = 64, cycles = 32, trials = 1000, len = 64, tmax = 10000, s_val = 0,
                 n_val = 0, runs = 100, max_rounds = 200, draws = 1000;
        uint32_t n32 = 128, height = 4, s = 4, c_moves = 3, k = 16, m = 8, i = 2, kk = 6,
                 maxlen = 20, pbits = 17;
        int bits = 16, rounds = 20, emit_k = 0, budget = 0;
        double eps = 1.0, d = 2.0;
        bool trace = false, dump = false, listing = false, blum = false;
    };
    auto a = std::make_shared<Args>();

    auto* run_tm = app.add_subcommand("run-tm", "run a machine file on an input");
    run_tm->add_option("file", a->file)->required();
    run_tm->add_option("input", a->input);
    run_tm->add_option("--steps", a->steps);
    run_tm->add_flag("--trace", a->trace);
    run_tm->callback([&, a] { cmd_run_tm(ctx, a->file, a->input, a->steps, a->trace); });

    auto* run_utm = app.add_subcommand("run-utm", "simulate a machine on the universal machine");
    run_utm->add_option("file", a->file)->required();
    run_utm->add_option("input", a->input);
    run_utm->add_option("--cycles", a->cycles);
    run_utm->add_flag("--trace", a->trace);
    run_utm->callback([&, a] { cmd_run_utm(ctx, a->file, a->input, a->cycles, a->trace); });

    auto* enc_utm = app.add_subcommand("encode-utm", "emit the universal-machine tape");
    enc_utm->add_option("file", a->file)->required();
    enc_utm->add_option("input", a->input);
    enc_utm->callback([&, a] { cmd_encode_utm(ctx, a->file, a->input); });

    auto* run_ca = app.add_subcommand("run-ca", "run a 1d cellular automaton");
    run_ca->add_option("file", a->file)->required();
    run_ca->add_option("row", a->input)->required();
    run_ca->add_option("--steps", a->steps);
    run_ca->callback([&, a] { cmd_run_ca(ctx, a->file, a->input, a->steps); });

    auto* life = app.add_subcommand("life", "run the Game of Life");
    life->add_option("file", a->file)->required();
    life->add_option("--steps", a->steps);
    life->add_option("--boundary", a->mode)->default_str("torus");
    life->add_flag("--trace", a->trace);
    life->callback([&, a] { cmd_life(ctx, a->file, a->steps, a->mode, a->trace); });

    auto* wwca = app.add_subcommand("ww-ca", "decide x = ww with the two-signal automaton");
    wwca->add_option("word", a->word)->required();
    wwca->callback([&, a] { cmd_ww_ca(ctx, a->word); });

    auto* bat = app.add_subcommand("batcher", "bitonic merge sort / schedules");
    bat->add_option("--sort", a->file);
    bat->add_option("--emit-schedule", a->emit_k);
    bat->callback([&, a] { cmd_batcher(ctx, a->file, a->emit_k); });

    auto* sg = app.add_subcommand("solve-game", "solve a full-information game");
    sg->add_option("--game", a->game)->required();
    sg->add_option("--file", a->file);
    sg->add_option("--boxes", a->boxes);
    sg->add_option("--input", a->input);
    sg->add_option("--budget", a->budget);
    sg->add_flag("--dump-values", a->dump);
    sg->add_flag("--listing", a->listing);
    sg->callback([&, a] {
        cmd_solve_game(ctx, a->game, a->file, a->boxes, a->input, a->budget, a->dump, a->listing);
    });

    auto* til = app.add_subcommand("tiling", "tile solver and the machine-run reduction");
    til->add_option("mode", a->mode)->required();
    til->add_option("file", a->file)->required();
    til->add_option("input", a->input);
    til->add_option("--height", a->height);
    til->add_option("--method", a->method)->default_str("bt");
    til->callback([&, a] { cmd_tiling(ctx, a->mode, a->file, a->input, a->height, a->method); });

    auto* ip = app.add_subcommand("ip-demo", "arithmetized game protocol demo");
    ip->add_option("--s", a->s);
    ip->add_option("--c", a->c_moves);
    ip->add_option("--trials", a->trials);
    ip->add_option("--pbits", a->pbits);
    ip->callback([&, a] { cmd_ip_demo(ctx, a->s, a->c_moves, a->trials, a->pbits); });

    auto* pr = app.add_subcommand("prime", "probabilistic primality test / prime generation");
    pr->add_option("mode", a->mode)->required();
    pr->add_option("n", a->n_val);
    pr->add_option("--bits", a->bits);
    pr->add_option("--rounds", a->rounds);
    pr->add_flag("--blum", a->blum);
    pr->callback([&, a] { cmd_prime(ctx, a->mode, a->n_val, a->bits, a->rounds, a->blum); });

    auto* kg = app.add_subcommand("keygen", "generate a Blum modulus key file");
    kg->add_option("--bits", a->bits)->default_val(32);
    kg->callback([&, a] { cmd_keygen(ctx, a->bits); });

    auto* en = app.add_subcommand("encrypt", "public-key encrypt a bit string");
    en->add_option("--key", a->key)->required();
    en->add_option("--message", a->message)->required();
    en->callback([&, a] { cmd_encrypt(ctx, a->key, a->message); });

    auto* de = app.add_subcommand("decrypt", "decrypt with the secret key");
    de->add_option("--key", a->key)->required();
    de->add_option("--x", a->x)->required();
    de->add_option("--s", a->s_val)->required();
    de->add_option("--c", a->c)->required();
    de->callback([&, a] { cmd_decrypt(ctx, a->key, a->x, a->s_val, a->c); });

    auto* prg = app.add_subcommand("prg", "squaring generator with hard-core bits");
    prg->add_option("--key", a->key)->required();
    prg->add_option("--x0", a->s_val);
    prg->add_option("--len", a->len);
    prg->callback([&, a] { cmd_prg(ctx, a->key, a->s_val, a->len); });

    auto* gl = app.add_subcommand("gl-demo", "hard-core inverter recovery rates");
    gl->add_option("--k", a->k);
    gl->add_option("--eps", a->eps);
    gl->add_option("--trials", a->trials)->default_val(20);
    gl->callback([&, a] { cmd_gl_demo(ctx, a->k, a->eps, a->trials); });

    auto* ex = app.add_subcommand("extract", "Toeplitz extractor on a weak source");
    ex->add_option("--m", a->m);
    ex->add_option("--i", a->i);
    ex->add_option("--n", a->n32);
    ex->add_option("--k", a->kk);
    ex->add_option("--draws", a->draws);
    ex->callback([&, a] { cmd_extract(ctx, a->m, a->i, a->n32, a->kk, a->draws); });

    auto* nb = app.add_subcommand("nextbit", "hybrid next-bit measurement (planted flaw)");
    nb->add_option("--n", a->n32)->default_val(8);
    nb->add_option("--trials", a->trials)->default_val(20000);
    nb->callback([&, a] { cmd_nextbit(ctx, a->n32, a->trials); });

    auto* qs = app.add_subcommand("qsort-bench", "quick-sort comparison accounting");
    qs->add_option("--n", a->n32);
    qs->add_option("--trials", a->trials);
    qs->callback([&, a] { cmd_qsort_bench(ctx, a->n32, a->trials); });

    auto* hc = app.add_subcommand("hc-demo", "isolated-node heuristic on G(n, d/n)");
    hc->add_option("--n", a->n32)->default_val(400);
    hc->add_option("--d", a->d);
    hc->add_option("--trials", a->trials)->default_val(200);
    hc->callback([&, a] { cmd_hc_demo(ctx, a->n32, a->d, a->trials); });

    auto* ph = app.add_subcommand("philosophers", "randomized symmetry breaking at dinner");
    ph->add_option("--n", a->n32)->default_val(10);
    ph->add_option("--max-rounds", a->max_rounds);
    ph->add_option("--runs", a->runs);
    ph->callback([&, a] { cmd_philosophers(ctx, a->n32, a->max_rounds, a->runs); });

    auto* ko = app.add_subcommand("kolmogorov", "bounded complexity by program enumeration");
    ko->add_option("--x", a->x)->required();
    ko->add_option("--cond", a->cond);
    ko->add_option("--maxlen", a->maxlen);
    ko->add_option("--tmax", a->tmax);
    ko->callback([&, a] { cmd_kolmogorov(ctx, a->x, a->cond, a->maxlen, a->tmax); });

    // the registry and the dispatch table must agree
    for (std::string_view name : wb::cli::kCommands)
        check(app.get_subcommand(std::string(name)) != nullptr, "CommandTable",
              "registered command missing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return ctx.exit_code;
}
