import pytest

from tsproject import (
    TsVertex,
    ValidationError,
    canonical_ts_dag,
    cutoff_bound,
    make_template,
    marginal_ts_admg,
    marginal_ts_dmag,
    project_arbitrary,
    simple_marginal_ts_admg,
    unroll_window,
)
from tsproject.oracle_testkit import random_template, window_marginal


def edge(i, ti, j, tj):
    return (TsVertex(i, ti), TsVertex(j, tj))


def has_bidirected(g, i, ti, j, tj):
    return edge(i, ti, j, tj) in g.bidirected or edge(j, tj, i, ti) in g.bidirected


class TestCanonicalTsDag:
    def test_ts_dag_passes_through(self, running_tpl):
        assert canonical_ts_dag(running_tpl) is running_tpl

    def test_bidirected_entry_becomes_latent_fork(self, fig3_tpl):
        dag = canonical_ts_dag(fig3_tpl)
        assert dag.is_ts_dag
        aux = [v for v in dag.variables if v.startswith("L(")]
        assert aux == ["L(X2,X1,1)"]
        assert (aux[0], 1, "X1") in dag.directed_t
        assert (aux[0], 0, "X2") in dag.directed_t

    def test_original_edges_preserved(self, fig3_tpl):
        dag = canonical_ts_dag(fig3_tpl)
        assert fig3_tpl.directed_t <= dag.directed_t


class TestSimpleMarginal:
    def test_rejects_bidirected_input(self, fig3_tpl):
        with pytest.raises(ValidationError):
            simple_marginal_ts_admg(fig3_tpl, 1)

    def test_directed_part_is_window_segment(self, b1_tpl):
        marg = simple_marginal_ts_admg(b1_tpl, 1)
        assert marg.directed == unroll_window(b1_tpl, 1).directed

    def test_b1_bidirected_edges(self, b1_tpl):
        marg = simple_marginal_ts_admg(b1_tpl, 1)
        assert has_bidirected(marg, "X", 1, "Y", 0)
        assert has_bidirected(marg, "X", 1, "X", 0)
        assert has_bidirected(marg, "Y", 1, "X", 0)

    def test_shift_invariance_of_bidirected_edges(self, b1_tpl):
        """An edge at offsets (a, b) implies the same pattern one step deeper in
        the past: the confounding witness shifts along but never re-enters the
        window."""
        p = 4
        marg = simple_marginal_ts_admg(b1_tpl, p)
        for u, v in marg.bidirected:
            if u.offset < p and v.offset < p:
                assert has_bidirected(marg, u.var, u.offset + 1, v.var, v.offset + 1)

    def test_jobs_parameter_is_equivalent(self, b1_tpl):
        assert simple_marginal_ts_admg(b1_tpl, 2) == simple_marginal_ts_admg(
            b1_tpl, 2, jobs=4
        )


class TestMarginalTsAdmg:
    def test_b2_distant_confounding(self, b2_tpl):
        """X3 confounds X1 and X5 four steps back; only the lagged pair survives."""
        marg = marginal_ts_admg(b2_tpl, ["X1", "X5"], 1)
        assert has_bidirected(marg, "X1", 1, "X5", 1)

    def test_rejects_empty_observed(self, b1_tpl):
        with pytest.raises(ValidationError):
            marginal_ts_admg(b1_tpl, [], 1)

    def test_rejects_unknown_observed(self, b1_tpl):
        with pytest.raises(ValidationError):
            marginal_ts_admg(b1_tpl, ["X", "Q"], 1)

    def test_matches_window_oracle_on_small_templates(self):
        for seed in range(8):
            tpl = random_template(seed, n_vars=3, max_lag=2, edge_density=0.2)
            for p in (0, 1):
                w = cutoff_bound(tpl, p).p_cut + p
                assert marginal_ts_admg(tpl, tpl.variables, p) == window_marginal(
                    tpl, tpl.variables, p, w
                ), (seed, p)

    def test_admg_input_goes_through_canonicalization(self, fig3_tpl):
        marg = marginal_ts_admg(fig3_tpl, ["X1", "X2", "X3"], 1)
        assert has_bidirected(marg, "X2", 1, "X1", 0)


class TestMarginalTsDmag:
    def test_output_is_ancestral(self, b1_tpl):
        from tsproject.finite_projection import ancestors

        mag = marginal_ts_dmag(b1_tpl, ["X", "Y"], 2)
        for u, v in mag.bidirected:
            assert u not in ancestors(mag, {v})
            assert v not in ancestors(mag, {u})

    def test_adjacencies_superset_of_admg(self, b2_tpl):
        admg = marginal_ts_admg(b2_tpl, ["X1", "X5"], 1)
        mag = marginal_ts_dmag(b2_tpl, ["X1", "X5"], 1)
        admg_adj = {frozenset(e) for e in admg.directed | admg.bidirected}
        mag_adj = {frozenset(e) for e in mag.directed | mag.bidirected}
        assert admg_adj <= mag_adj


class TestCutoffBound:
    def test_running_example_values(self, running_tpl):
        for p in (0, 1, 2):
            q = cutoff_bound(running_tpl, p)
            assert (q.K, q.L, q.M) == (3, 6, 5)
            assert q.p_cut == 10 * p + 125

    def test_b1_values(self, b1_tpl):
        q = cutoff_bound(b1_tpl, 0)
        assert (q.K, q.L, q.M) == (5, 1, 8)
        assert q.p_cut == 26 * 0 + 319

    def test_acyclic_summary_degenerates(self):
        tpl = make_template(["A", "B"], directed=[("A", 3, "B")])
        q = cutoff_bound(tpl, 2)
        assert (q.K, q.M) == (0, 0)
        assert q.p_cut == 2 + q.L == 5

    def test_rejects_bidirected(self, fig3_tpl):
        with pytest.raises(ValidationError):
            cutoff_bound(fig3_tpl, 0)


def test_project_arbitrary_subset(b1_tpl):
    marg = marginal_ts_admg(b1_tpl, ["X", "Y"], 2)
    keep = {TsVertex("X", 0), TsVertex("Y", 2)}
    small = project_arbitrary(marg, keep)
    assert small.vertices == frozenset(keep)
