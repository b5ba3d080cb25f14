#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "freering/codec.hpp"
#include "freering/error.hpp"
#include "freering/expr.hpp"
#include "freering/geometry.hpp"
#include "freering/group_ring.hpp"
#include "freering/json_io.hpp"
#include "freering/laurent.hpp"
#include "freering/magnus.hpp"
#include "freering/word.hpp"

namespace freering::cli {

namespace {

struct Options {
  int rank = 0;
  std::size_t budget = 4096;
  int samples = 20;
  std::optional<unsigned long> seed;
  std::string in;
  int k = 1;
  int radius = 4;
  bool json = true;
  std::vector<std::string> args;
};

class Context {
 public:
  Context(const Options& opt, std::istream& in) : opt_(opt), in_(in) {}

  int rank() const {
    if (opt_.rank < 1) throw Error(ErrorKind::UsageError, "--rank is required and must be positive");
    return opt_.rank;
  }

  const std::vector<std::string>& args() const { return opt_.args; }

  const std::string& arg(std::size_t i) const {
    if (i >= opt_.args.size()) {
      throw Error(ErrorKind::UsageError, "missing argument " + std::to_string(i + 1));
    }
    return opt_.args[i];
  }

  void expect_args(std::size_t n) const {
    if (opt_.args.size() != n) {
      throw Error(ErrorKind::UsageError,
                  "expected " + std::to_string(n) + " argument(s), got " + std::to_string(opt_.args.size()));
    }
  }

  GroupRingElem element(std::size_t i) const { return parse_group_ring(arg(i), rank()); }
  LaurentPoly laurent(std::size_t i) const { return parse_laurent(arg(i), rank()); }

  Word word(std::size_t i) const {
    const GroupRingElem f = element(i);
    const auto unit = is_trivial_unit(f);
    if (!unit || unit->alpha != 1) throw Error(ErrorKind::NotAWord, "\"" + arg(i) + "\" is not a group element");
    return unit->g;
  }

  std::vector<Word> words_from(std::size_t first) const {
    std::vector<Word> out;
    for (std::size_t i = first; i < opt_.args.size(); ++i) out.push_back(word(i));
    return out;
  }

  Json input() const {
    std::string text;
    if (opt_.in.empty() || opt_.in == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    } else {
      std::ifstream file(opt_.in);
      if (!file) throw Error(ErrorKind::UsageError, "cannot open " + opt_.in);
      text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    return Json::parse(text);
  }

  bool has_input() const { return !opt_.in.empty(); }

  Json json_arg(std::size_t i) const { return Json::parse(arg(i)); }

  std::size_t budget() const { return opt_.budget; }
  int samples() const { return opt_.samples; }
  std::optional<unsigned long> seed() const { return opt_.seed; }
  int k() const { return opt_.k; }
  int radius() const { return opt_.radius; }

 private:
  const Options& opt_;
  std::istream& in_;
};

const char* name(DivisionStatus s) {
  switch (s) {
    case DivisionStatus::Exact: return "Exact";
    case DivisionStatus::NotDivisible: return "NotDivisible";
    case DivisionStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "";
}

const char* name(Verdict v) {
  switch (v) {
    case Verdict::Irreducible: return "Irreducible";
    case Verdict::Reducible: return "Reducible";
    case Verdict::Unknown: return "Unknown";
  }
  return "";
}

const char* name(Order o) {
  switch (o) {
    case Order::Less: return "Less";
    case Order::Equal: return "Equal";
    case Order::Greater: return "Greater";
  }
  return "";
}

const char* name(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Satisfied: return "Satisfied";
    case ProbeStatus::ViolatedAt: return "ViolatedAt";
    case ProbeStatus::Inconclusive: return "Inconclusive";
  }
  return "";
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

Json element_json(const GroupRingElem& f) {
  Json j = to_json(f);
  j["expr"] = to_string(f);
  return j;
}

Json probe_json(const ProbeResult& r) {
  Json j = {{"status", name(r.status)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json divide(const Context& c, Side side) {
  c.expect_args(2);
  const DivisionResult r = divide_exact(c.element(0), c.element(1), side, c.budget());
  Json j = {{"status", name(r.status)}};
  if (r.quotient) j["quotient"] = element_json(*r.quotient);
  return j;
}

std::vector<Letter> tuple_arg(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidJson, "a tuple is an array of nonzero integers");
  std::vector<Letter> t;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorKind::InvalidJson, "a tuple is an array of nonzero integers");
    t.push_back(x.get<Letter>());
  }
  return t;
}

std::vector<Rational> psi_samples(const Context& c) {
  if (c.samples() < 1) throw Error(ErrorKind::UsageError, "--samples must be positive");
  std::vector<Rational> out;
  if (!c.seed()) {
    for (int i = 1; i <= c.samples(); ++i) out.emplace_back(i);
    return out;
  }
  std::mt19937_64 rng(*c.seed());
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int i = 0; i < c.samples(); ++i) out.emplace_back(dist(rng));
  return out;
}

using Handler = std::function<Json(const Context&)>;

const std::vector<std::pair<std::string, std::pair<std::string, Handler>>>& commands() {
  static const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> table = {
      {"eval", {"Evaluate an expression in Q(F)", [](const Context& c) {
                  c.expect_args(1);
                  return element_json(c.element(0));
                }}},
      {"divl", {"Left exact division: q with d*q = w. Args: W D", [](const Context& c) {
                  return divide(c, Side::Left);
                }}},
      {"divr", {"Right exact division: q with q*d = w. Args: W D", [](const Context& c) {
                  return divide(c, Side::Right);
                }}},
      {"unit", {"Trivial-unit test", [](const Context& c) {
                  c.expect_args(1);
                  const auto u = is_trivial_unit(c.element(0));
                  if (!u) return Json{{"unit", false}};
                  return Json{{"unit", true},
                              {"alpha", to_json(u->alpha)},
                              {"word", to_json(u->g)},
                              {"inverse", element_json(GroupRingElem::monomial(u->g.inverse(), 1 / u->alpha))}};
                }}},
      {"irred", {"Irreducibility certificate for 1 - h", [](const Context& c) {
                   c.expect_args(1);
                   const auto cert = irreducibility_certificate(c.element(0));
                   Json j = {{"verdict", name(cert.verdict)}};
                   if (cert.witness) {
                     j["witness"] = {element_json(cert.witness->first), element_json(cert.witness->second)};
                   }
                   return j;
                 }}},
      {"rigid", {"Rigidity certificate for (1 - g1)...(1 - gn). Args: G1 ... Gn", [](const Context& c) {
                   return Json{{"rigid", rigidity_certificate(c.words_from(0))}};
                 }}},
      {"centralizer", {"Primitive root r with g = r^k", [](const Context& c) {
                         c.expect_args(1);
                         const auto r = centralizer_root(c.word(0));
                         return Json{{"root", to_json(r.root)}, {"exponent", r.exponent}};
                       }}},
      {"order-cmp", {"Bergman order of two group elements. Args: U V", [](const Context& c) {
                       c.expect_args(2);
                       const auto v = bergman_cmp(c.word(0), c.word(1));
                       Json j = {{"order", name(v.order)}};
                       if (v.degree) j["degree"] = *v.degree;
                       return j;
                     }}},
      {"encode-word", {"Word code of a tuple. Arg: JSON array such as [1,2,-1]", [](const Context& c) {
                         c.expect_args(1);
                         return to_json(encode_word(tuple_arg(c.json_arg(0)), c.rank()));
                       }}},
      {"decode-word", {"Decode a word code read from --in or stdin", [](const Context& c) {
                         c.expect_args(0);
                         const WordCode code = word_code_from_json(c.input());
                         return Json{{"tuple", decode_word(code)}};
                       }}},
      {"pack-fq", {"Element code of f; the identity coefficient travels as const", [](const Context& c) {
                     c.expect_args(1);
                     return to_json(pack_element(c.element(0)));
                   }}},
      {"check-fq", {"Check an element code from --in against F", [](const Context& c) {
                      c.expect_args(1);
                      const ElementCode code = element_code_from_json(c.input());
                      GroupRingElem f = c.element(0);
                      const Rational constant = f.coefficient(Word(f.rank()));
                      f = f - GroupRingElem::scalar(f.rank(), constant);
                      if (code.w.rank() != f.rank()) throw Error(ErrorKind::RankMismatch, "code and element ranks differ");
                      bool ok = constant == code.constant && code.s == static_cast<int>(f.size());
                      ok = ok && !f.is_zero() && check_fq(code.w, f);
                      return Json{{"valid", ok}};
                    }}},
      {"am-chain", {"Chain element for M; with --in, verify the element read there", [](const Context& c) {
                      c.expect_args(1);
                      const int m = std::stoi(c.arg(0));
                      if (c.has_input()) {
                        const GroupRingElem w = group_ring_from_json(c.input());
                        return Json{{"m", m}, {"valid", am_chain_verify(w, m)}};
                      }
                      return Json{{"m", m}, {"w", to_json(am_chain(m, c.rank()))}};
                    }}},
      {"tuple-encode", {"Tuple code over base P. Args: P ALPHAS (JSON array of rationals)", [](const Context& c) {
                          c.expect_args(2);
                          const Json a = c.json_arg(1);
                          if (!a.is_array()) throw Error(ErrorKind::InvalidJson, "expected an array of rationals");
                          std::vector<Rational> alphas;
                          for (const auto& x : a) alphas.push_back(rational_from_json(x));
                          return to_json(tuple_encode(alphas, c.laurent(0)));
                        }}},
      {"tuple-decode", {"Decode a tuple code read from --in or stdin", [](const Context& c) {
                          c.expect_args(0);
                          return Json{{"tuple", rationals(tuple_decode(tuple_code_from_json(c.input())))}};
                        }}},
      {"nu", {"Move a tuple code from --in onto base Q", [](const Context& c) {
                c.expect_args(1);
                return to_json(nu_transport(tuple_code_from_json(c.input()), c.laurent(0)));
              }}},
      {"psi-check", {"psi-formula check of Q against P. Args: Q P", [](const Context& c) {
                       c.expect_args(2);
                       const auto r = psi_check(c.laurent(0), c.laurent(1), psi_samples(c));
                       Json j = {{"pass", r.pass}};
                       if (r.witness) j["witness"] = to_json(*r.witness);
                       return j;
                     }}},
      {"in-kp", {"Membership of Q in K[P]. Args: Q P", [](const Context& c) {
                   c.expect_args(2);
                   const auto r = in_KP(c.laurent(0), c.laurent(1));
                   if (!r) return Json{{"member", false}};
                   return Json{{"member", true}, {"coefficients", rationals(*r)}};
                 }}},
      {"metric", {"Word metric d(g, h) = |g^-1 h|. Args: G H", [](const Context& c) {
                    c.expect_args(2);
                    return Json{{"distance", word_metric(c.word(0), c.word(1))}};
                  }}},
      {"geodesic", {"The geodesic g^-1 h. Args: G H", [](const Context& c) {
                      c.expect_args(2);
                      return Json{{"geodesic", to_json(geodesic(c.word(0), c.word(1)))}};
                    }}},
      {"fold", {"Core graph of <Y>. Args: Y1 ... Yn", [](const Context& c) {
                  return to_json(fold(c.words_from(0), c.rank()));
                }}},
      {"member", {"Membership of H in <Y>. Args: H Y1 ... Yn", [](const Context& c) {
                    const Word h = c.word(0);
                    return Json{{"member", member(h, c.words_from(1))}};
                  }}},
      {"is-basis", {"Whether Y freely generates <Y>. Args: Y1 ... Yn", [](const Context& c) {
                      return Json{{"free_basis", is_free_basis(c.words_from(0), c.rank())}};
                    }}},
      {"qc-probe", {"Bounded quasiconvexity probe (--k, --radius). Args: Y1 ... Yn", [](const Context& c) {
                      return probe_json(quasiconvexity_probe(c.words_from(0), c.rank(), c.k(), c.radius()));
                    }}},
      {"mal-probe", {"Bounded malnormality probe (--radius). Args: Y1 ... Yn", [](const Context& c) {
                       return probe_json(malnormality_probe(c.words_from(0), c.rank(), c.radius()));
                     }}},
  };
  return table;
}

void emit_error(std::ostream& out, std::string_view kind, const std::string& detail) {
  out << Json{{"error", {{"kind", kind}, {"detail", detail}}}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::istream& in) {
  CLI::App app{"Exact arithmetic in group rings of free groups", "freering"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--rank", opt.rank, "Rank of the free group (number of Laurent variables for K[t] commands)");
  app.add_option("--budget", opt.budget, "Division budget in quotient terms")->capture_default_str();
  app.add_option("--samples", opt.samples, "psi-check sample count")->capture_default_str();
  app.add_option("--seed", opt.seed, "Draw psi-check samples from [-1000, 1000] with this seed");
  app.add_option("--in", opt.in, "JSON input file; '-' or absent reads stdin");
  app.add_option("--k", opt.k, "Quasiconvexity constant")->capture_default_str();
  app.add_option("--radius", opt.radius, "Probe radius")->capture_default_str();
  app.add_flag("--json", opt.json, "JSON output (the only mode)");
  app.fallthrough();

  std::map<const CLI::App*, const Handler*> handlers;
  for (const auto& [cmd, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(cmd, entry.first);
    sub->add_option("args", opt.args, "Arguments");
    sub->fallthrough();
    handlers[sub] = &entry.second;
  }

  // CLI11 splits a value like "[1,2,-1]" into three; a leading guard byte
  // keeps JSON arguments whole until after parsing.
  constexpr char kGuard = '\x01';
  std::vector<std::string> reversed;
  for (auto it = args.rbegin(); it != args.rend(); ++it) {
    reversed.push_back(!it->empty() && it->front() == '[' ? kGuard + *it : *it);
  }
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(out, kind_name(ErrorKind::UsageError), e.what());
    return 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  for (auto& a : opt.args) {
    if (!a.empty() && a.front() == kGuard) a.erase(0, 1);
  }
  const Context ctx(opt, in);
  try {
    out << (*handlers.at(chosen))(ctx).dump() << "\n";
    return 0;
  } catch (const Error& e) {
    emit_error(out, kind_name(e.kind()), e.what());
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  } catch (const Json::exception& e) {
    emit_error(out, kind_name(ErrorKind::InvalidJson), e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    emit_error(out, kind_name(ErrorKind::UsageError), e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    emit_error(out, kind_name(ErrorKind::UsageError), e.what());
    return 2;
  }
}

}  // namespace freering::cli
