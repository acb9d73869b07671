// Command-line front end: `wta <subcommand> ...`.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wta/automaton.hpp"
#include "wta/congruence.hpp"
#include "wta/equivalence.hpp"
#include "wta/error.hpp"
#include "wta/io.hpp"
#include "wta/sign_of_life.hpp"
#include "wta/transform.hpp"

namespace {

using namespace wta;

// Error raised while reading a named input, reported with the file name.
struct InputError : Error {
  using Error::Error;
};

Wta load(const std::string& path) {
  try {
    return read_automaton(path);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const UsageError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + output + "'");
  out << text;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string info_text(const Wta& m) {
  std::vector<bool> acc = accessible_states(m);
  std::vector<bool> coacc = coaccessible_states(m);
  std::size_t n_acc = 0, n_live = 0;
  for (StateId q = 0; q < m.num_states(); ++q) {
    n_acc += acc[q];
    n_live += coacc[q];
  }
  std::ostringstream out;
  out << "semifield: " << to_string(m.semifield()) << '\n'
      << "symbols: " << m.alphabet().size() << '\n'
      << "states: " << m.num_states() << '\n'
      << "final: " << m.finals().size() << '\n'
      << "transitions: " << m.num_transitions() << '\n'
      << "size: " << m.size() << '\n'
      << "deterministic: " << yes_no(m.is_deterministic()) << '\n'
      << "accessible: " << yes_no(n_acc == m.num_states()) << '\n'
      << "accessible states: " << n_acc << '\n'
      << "live states: " << n_live << '\n'
      << "dead states: " << m.num_states() - n_live << '\n';
  return out.str();
}

std::string sol_text(const Wta& m) {
  SolTable sol = compute_sol(m, weak_equivalence(m));
  const Partition& p = sol.partition();
  std::ostringstream out;
  for (BlockId b = 0; b < p.num_blocks(); ++b) {
    out << "block {";
    bool first = true;
    for (StateId q : p.members(b)) {
      out << (first ? "" : ", ") << m.state_name(q);
      first = false;
    }
    out << "}: ";
    if (sol.is_live_block(b))
      out << print_tree(sol.sign_of_life(m, b).tree(), m.alphabet(), m.state_names());
    else
      out << "dead";
    out << '\n';
  }
  for (StateId q = 0; q < m.num_states(); ++q) {
    out << "lambda " << m.state_name(q) << ": ";
    if (const auto& l = sol.lambda(q))
      out << *l;
    else
      out << "dead";
    out << '\n';
  }
  return out.str();
}

std::string equiv_text(const Wta& a, const Wta& b, bool witness, bool& same) {
  EquivalenceResult r = check_equivalence(a, b, witness);
  same = r.equivalent;
  std::ostringstream out;
  if (r.equivalent) {
    out << "equivalent\n";
    return out.str();
  }
  out << "not equivalent\n";
  out << "reason: " << r.reason << '\n';
  if (witness) {
    if (r.witness) {
      out << "witness: " << print_tree(*r.witness, a.alphabet()) << '\n'
          << "weight in first: " << recognize(a, *r.witness) << '\n'
          << "weight in second: " << recognize(b, *r.witness) << '\n';
    } else {
      out << "witness: unavailable\n";
    }
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted tree automata over commutative semifields: pushing, "
               "minimization and equivalence of deterministic automata."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string file, file2, output, tree_text, weights_file;
  bool myhill_nerode = false, witness = false;

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "Automaton in .wta format")->required();
    return sub;
  };
  auto with_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write to FILE instead of stdout");
    return sub;
  };

  auto* validate = with_output(with_file(app.add_subcommand("validate", "Check that a file parses")));
  auto* info = with_output(with_file(app.add_subcommand("info", "Print size and structural facts")));
  auto* run = with_output(with_file(app.add_subcommand("run", "Print the weight of a ground tree")));
  run->add_option("-t,--tree", tree_text, "Tree such as sigma(alpha, beta)")->required();
  auto* trim = with_output(with_file(app.add_subcommand("trim", "Remove useless states")));
  auto* congruence = with_output(with_file(app.add_subcommand(
      "congruence", "Print the coarsest congruence respecting final states")));
  congruence->add_flag("--myhill-nerode", myhill_nerode,
                       "Print the Myhill-Nerode congruence of the trimmed automaton");
  auto* sol = with_output(with_file(app.add_subcommand(
      "sol", "Print signs of life and pushing weights")));
  auto* push_cmd = with_output(with_file(app.add_subcommand("push", "Push weights towards the root")));
  push_cmd->add_option("--weights", weights_file,
                       "Lines `state weight`; unlisted states get 1");
  auto* syn = with_output(with_file(app.add_subcommand(
      "syn", "Unweighted automaton over symbol/weight pairs")));
  auto* minimize_cmd = with_output(with_file(app.add_subcommand("minimize", "Minimal equivalent dwta")));
  auto* equiv = with_output(app.add_subcommand("equiv", "Decide equivalence of two dwta"));
  equiv->add_option("A", file, "First automaton")->required();
  equiv->add_option("B", file2, "Second automaton")->required();
  equiv->add_flag("--witness", witness, "Print a tree on which the automata differ");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*validate) {
      Wta m = load(file);
      emit("valid: " + std::to_string(m.num_states()) + " states, " +
               std::to_string(m.num_transitions()) + " transitions\n",
           output);
    } else if (*info) {
      emit(info_text(load(file)), output);
    } else if (*run) {
      Wta m = load(file);
      auto t = [&] {
        try {
          return parse_tree(tree_text, m.alphabet());
        } catch (const ParseError& e) {
          throw InputError(std::string("tree: ") + e.what());
        }
      }();
      std::ostringstream out;
      out << recognize(m, t) << '\n';
      emit(out.str(), output);
    } else if (*trim) {
      emit(print_automaton(trim_useful(load(file))), output);
    } else if (*congruence) {
      Wta m = load(file);
      if (myhill_nerode) {
        Wta t = trim_useful(m);
        emit(to_string(myhill_nerode_congruence(t), t) + "\n", output);
      } else {
        emit(to_string(weak_equivalence(m), m) + "\n", output);
      }
    } else if (*sol) {
      emit(sol_text(load(file)), output);
    } else if (*push_cmd) {
      Wta m = load(file);
      if (weights_file.empty()) {
        emit(print_automaton(push(m, pushing_weights(m, compute_sol(m, weak_equivalence(m))))),
             output);
      } else {
        std::string text = read_text_file(weights_file);
        try {
          emit(print_automaton(push(m, parse_push_weights(text, m))), output);
        } catch (const ParseError& e) {
          throw InputError(weights_file + ": " + e.what());
        }
      }
    } else if (*syn) {
      emit(print_automaton(alphabetic(load(file))), output);
    } else if (*minimize_cmd) {
      emit(print_automaton(minimize(load(file))), output);
    } else if (*equiv) {
      bool same = false;
      emit(equiv_text(load(file), load(file2), witness, same), output);
      return same ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
