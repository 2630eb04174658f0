#include "graphmoves/session.hpp"

namespace gm {

Session::Session(Graph start, std::optional<std::size_t> budget) : states_{std::move(start)}, budget_(budget) {}

void Session::emit(const Move& m) {
    if (budget_ && script_.size() >= *budget_)
        throw BudgetExceeded("move budget of " + std::to_string(*budget_) + " exhausted");
    Graph next = apply_move(graph(), m);
    script_.push_back(m);
    states_.push_back(std::move(next));
}

void Session::collect() {
    const Graph& g = graph();
    auto sources = g.regular_sources();
    if (sources.empty()) return;
    std::vector<std::string> others;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (std::find(sources.begin(), sources.end(), v) == sources.end()) others.push_back(g.name(v));
    auto name = source_name(others);
    if (sources.size() == 1 && g.name(sources[0]) == name) return;
    Move m;
    m.kind = MoveKind::Oinv;
    for (auto s : sources) m.group.emplace_back(g.name(s));
    m.name = name;
    emit(m);
}

void Session::append_reverse(const Session& other) {
    if (!graph().same_up_to_relabeling(other.graph()))
        throw std::logic_error("cannot reverse a script that ends at a different graph");
    for (std::size_t k = other.script_.size(); k-- > 0;) {
        const Graph& before = other.states_[k];
        const Graph& after = other.states_[k + 1];
        Move inv = inverse_move(before, other.script_[k], after);
        emit(reorder(inv, after.names(), graph().names()));
    }
}

std::optional<std::string> Session::source() const {
    auto s = graph().regular_sources();
    if (s.empty()) return std::nullopt;
    if (s.size() > 1) throw std::logic_error("sources are not collected");
    return graph().name(s[0]);
}

}  // namespace gm
