import hashlib
import json
import logging
import math
import os
from datetime import datetime
from multiprocessing import TimeoutError

import numpy as np

from .automorphisms import (MAX_N as AUTOMORPHISM_MAX_N, STABILIZER_RANGE, block_sizes_consistent,
                            brute_force_neighborhood_determination, certify_grr, compute_automorphism_group,
                            generating_set_stabilizer, is_automorphism, is_edge_transitive, left_translation,
                            neighborhood_determination, permutes_dominating_sets, semidirect_reconstruction,
                            verify_copy_structure, verify_generators)
from .connectivity import (CUT_SUBSET_BOUND, DEEP_MAX_FLOW_BOUND, EXHAUSTIVE, MAX_FLOW_BOUND, STRUCTURAL,
                           enumerate_minimum_vertex_cuts, is_hyper_connected, is_super_connected, vertex_connectivity)
from .domination import (DEEP_MAX_N as EDS_DEEP_MAX_N, MAX_N as EDS_MAX_N, brute_force_efficient_dominating_sets,
                         enumerate_efficient_dominating_sets, is_efficient_dominating_set, minimum_pairwise_distance)
from .exceptions import DomainError, ScaleRefusal
from .expectations import P3_CUT_PROFILES, candidate_sets_for, expectation_for
from .graph_core import (FIRST_SYMBOL, PRECOMPUTED_BOUND, block, build_pancake, diameter, export_edgelist,
                         export_json, girth, is_k4_free, neighborhood, rank_rows)
from .permutations import GeneratorSet, Permutation, compose, identity
from .pool import get_thread_pool_class, in_lambda
from .version import __version__

CONNECTIVITY = 'connectivity'
DOMINATION = 'domination'
AUTOMORPHISMS = 'automorphisms'
STRUCTURE = 'structure'
THM31 = 'thm31'
ALL_SUITES = (CONNECTIVITY, DOMINATION, AUTOMORPHISMS, STRUCTURE, THM31)

SCHEMA_VERSION = 1


class VerificationReport:
    """Suite outcomes for one n. Everything except timings is a function of the inputs and the version."""

    def __init__(self, n, options, suites, timings):
        self.n = n
        self.options = options
        self.suites = suites
        self.timings = timings

    @property
    def failures(self):
        return [f'{name}: {failure}' for name in sorted(self.suites) for failure in self.suites[name]['failures']]

    @property
    def passed(self):
        return not self.failures

    def to_dict(self, include_timings=True):
        report = {
            'schema_version': SCHEMA_VERSION,
            'version': __version__,
            'n': self.n,
            'options': self.options,
            'pass': self.passed,
            'suites': self.suites
        }
        if include_timings:
            report['timings'] = self.timings
        return report

    def dumps(self, include_timings=True):
        return json.dumps(self.to_dict(include_timings), sort_keys=True, indent=2)


class _SuiteRecorder:
    def __init__(self, mode=EXHAUSTIVE):
        self.mode = mode
        self.checks = {}
        self.results = {}

    def check(self, name, operation, expected, actual, mode=None):
        passed = expected == actual
        self.checks[name] = {
            'operation': operation,
            'mode': mode or self.mode,
            'expected': expected,
            'actual': actual,
            'pass': passed
        }
        return passed

    def to_dict(self):
        failures = sorted(name for name, check in self.checks.items() if not check['pass'])
        modes = {check['mode'] for check in self.checks.values()}
        return {
            'mode': STRUCTURAL if STRUCTURAL in modes else EXHAUSTIVE,
            'pass': not failures,
            'failures': failures,
            'checks': self.checks,
            'results': self.results
        }


class PancakeLab:
    __BUDGET_SECS = 600
    __CACHE_TTL_IN_MINUTES = 120
    __MIN_N = 3
    __MAX_N = PRECOMPUTED_BOUND
    __cache = {}

    def __init__(self, options={}, logger=None):
        self.__CACHE_TTL_IN_MINUTES = options.get('cache_ttl_in_minutes', self.__CACHE_TTL_IN_MINUTES)
        self.__budget_secs = self.__parse_budget('PANCAKE_LAB_BUDGET_SECS',
                                                 os.environ.get('PANCAKE_LAB_BUDGET_SECS', self.__BUDGET_SECS))
        if options.get('budget_secs'):
            self.__budget_secs = self.__parse_budget('budget_secs', options['budget_secs'])
        self.__concurrency = options.get('concurrency') or os.cpu_count() or 1
        self.__deep = options.get('deep', False)
        self.__exhaustive = options.get('exhaustive')
        self.__parallel = options.get('parallel', False)
        self.__Pool = get_thread_pool_class()
        self.__graphs = {}
        self.__logger = logger if logger is not None else logging.getLogger()

    @staticmethod
    def __parse_budget(name, value):
        try:
            budget = float(value)
        except (TypeError, ValueError):
            raise DomainError(f'{name} must be a number of seconds, got {value!r}')
        if not budget > 0:
            raise DomainError(f'{name} must be positive, got {value!r}')
        return budget

    def get_graph(self, n):
        if n not in self.__graphs:
            started = datetime.now()
            self.__graphs[n] = build_pancake(n)
            self.__logger.debug(f'Built P_{n} in {(datetime.now() - started).total_seconds():.3f} s')
        return self.__graphs[n]

    def export_graph(self, n, path, fmt='json'):
        if n > self.__MAX_N:
            raise ScaleRefusal('export_graph', f'n <= {self.__MAX_N}', f'n = {n}')
        g = self.get_graph(n)
        if fmt == 'json':
            export_json(g, path)
        elif fmt == 'edgelist':
            export_edgelist(g, path)
        else:
            raise DomainError(f'The format {fmt} is not supported')
        self.__logger.info(f'Wrote P_{n} ({g.vertex_count} vertices, {g.edge_count} edges) to {path} as {fmt}')
        return g

    def run_suite(self, n, suites=None, deep=None, exhaustive=None):
        if n < self.__MIN_N:
            raise DomainError(f'verification needs n >= {self.__MIN_N}, got {n}')
        if n > self.__MAX_N:
            raise ScaleRefusal('run_suite', f'n <= {self.__MAX_N}', f'n = {n}')
        suites = sorted(set(suites or ALL_SUITES))
        if not suites:
            raise DomainError('At least one suite is required')
        for name in suites:
            if name not in ALL_SUITES:
                raise DomainError(f'The suite {name} does not exist')
        deep = self.__deep if deep is None else deep
        exhaustive = self.__exhaustive if exhaustive is None else exhaustive

        options = {'n': n, 'suites': suites, 'deep': bool(deep), 'exhaustive': exhaustive}
        hash_digest = self.get_hash(options)
        if self.__cache.get(hash_digest) is not None:
            cache_datetime = self.__cache[hash_digest]['datetime']
            delta_in_minutes = (datetime.now() - cache_datetime).total_seconds() / 60
            if delta_in_minutes <= self.__CACHE_TTL_IN_MINUTES:
                self.__logger.info(f'Cache hit for {hash_digest}')
                return self.__cache[hash_digest]['result']
            else:
                self.__logger.info(f'Cache expired for {hash_digest}')
                del self.__cache[hash_digest]
        else:
            self.__logger.info(f'Cache miss for {hash_digest}')

        g = self.get_graph(n)
        runners = {
            CONNECTIVITY: self.__connectivity_suite,
            DOMINATION: self.__domination_suite,
            AUTOMORPHISMS: self.__automorphisms_suite,
            STRUCTURE: self.__structure_suite,
            THM31: self.__neighborhood_suite
        }
        results, timings = self.__execute([(name, runners[name]) for name in suites], g, deep, exhaustive)
        report = VerificationReport(n, options, results, timings)

        self.__cache[hash_digest] = {
            'result': report,
            'datetime': datetime.now()
        }
        self.__logger.info(f'P_{n}: {"PASS" if report.passed else "FAIL"} for {", ".join(suites)}')
        return report

    def __execute(self, jobs, g, deep, exhaustive):
        pool = self.__Pool(len(jobs) if self.__parallel else 1)
        submitted = datetime.now()
        pending = []
        for name, runner in jobs:
            result = pool.apply_async(self.__timed, (name, runner, g, deep, exhaustive))
            pending.append((name, result))
        pool.close()

        if in_lambda():
            self.__logger.warning('Suite budget is not enforced inside Lambda')

        results = {}
        timings = {}
        for name, result in pending:
            if in_lambda():
                outcome, seconds = result.get()
            else:
                # sequential suites start when the previous one ends
                if self.__parallel:
                    timeout = max(0.0, self.__budget_secs - (datetime.now() - submitted).total_seconds())
                else:
                    timeout = self.__budget_secs
                try:
                    outcome, seconds = result.get(timeout=timeout)
                except TimeoutError:
                    pool.terminate()
                    raise ScaleRefusal(f'{name} suite', f'{self.__budget_secs:g} s', 'wall time')
                except Exception:
                    pool.terminate()
                    raise
            results[name] = outcome
            timings[name] = round(seconds, 3)
        pool.join()
        return results, timings

    def __timed(self, name, runner, g, deep, exhaustive):
        started = datetime.now()
        self.__logger.info(f'P_{g.n}: running the {name} suite')
        outcome = runner(g, deep, exhaustive)
        seconds = (datetime.now() - started).total_seconds()
        self.__logger.info(f'P_{g.n}: {name} suite {"passed" if outcome["pass"] else "failed"} in {seconds:.2f} s')
        return outcome, seconds

    def __connectivity_suite(self, g, deep, exhaustive):
        expected = expectation_for(g.n)
        suite = _SuiteRecorder()
        bound = DEEP_MAX_FLOW_BOUND if deep else MAX_FLOW_BOUND
        if g.n > bound and exhaustive:
            raise ScaleRefusal('vertex_connectivity', f'n <= {bound}', f'n = {g.n}')

        kappa = vertex_connectivity(g, bound=bound, logger=self.__logger) if g.n <= bound else None
        if kappa is not None:
            suite.check('kappa', 'vertex_connectivity', expected.kappa, kappa)
        else:
            self.__logger.warning(f'P_{g.n}: kappa not computed above n = {bound}')
        suite.check('girth', 'girth', expected.girth, girth(g))
        suite.check('diameter', 'diameter', expected.diameter, diameter(g))
        suite.check('k4_free', 'is_k4_free', True, is_k4_free(g))

        can_scan = kappa is not None and math.comb(g.vertex_count, kappa) <= CUT_SUBSET_BOUND
        if exhaustive and not can_scan:
            raise ScaleRefusal('enumerate_minimum_vertex_cuts', f'C(n!, k) <= {CUT_SUBSET_BOUND}', f'n = {g.n}')
        cuts = None
        if can_scan:
            cuts = enumerate_minimum_vertex_cuts(g, kappa, concurrency=self.__concurrency, logger=self.__logger)
            suite.results['minimum_cut_count'] = len(cuts)
            if g.n == 3:
                profiles = {}
                for cut in cuts:
                    key = tuple(cut.component_profile)
                    profiles[key] = profiles.get(key, 0) + 1
                suite.check('p3_cut_profiles', 'enumerate_minimum_vertex_cuts',
                            {' '.join(map(str, k)): v for k, v in sorted(P3_CUT_PROFILES.items())},
                            {' '.join(map(str, k)): v for k, v in sorted(profiles.items())})

        super_certificate = is_super_connected(g, cuts=cuts, kappa=kappa, exhaustive=can_scan,
                                               concurrency=self.__concurrency, bound=bound, logger=self.__logger)
        hyper_certificate = is_hyper_connected(g, cuts=cuts, kappa=kappa, super_certificate=super_certificate,
                                               exhaustive=can_scan, concurrency=self.__concurrency, bound=bound,
                                               logger=self.__logger)
        suite.check('super_connected', 'is_super_connected', expected.super_connected, super_certificate.result,
                    mode=super_certificate.mode)
        suite.check('hyper_connected', 'is_hyper_connected', expected.hyper_connected, hyper_certificate.result,
                    mode=hyper_certificate.mode)
        suite.results['kappa'] = kappa
        suite.results['super_connected'] = super_certificate.to_dict()
        suite.results['hyper_connected'] = hyper_certificate.to_dict()
        if not expected.super_connected:
            suite.results['expected_negative'] = ['super_connected', 'hyper_connected']
        return suite.to_dict()

    def __domination_suite(self, g, deep, exhaustive):
        expected = expectation_for(g.n)
        suite = _SuiteRecorder()
        bound = EDS_DEEP_MAX_N if deep else EDS_MAX_N
        full_size = math.factorial(g.n - 1)
        blocks = [block(g, FIRST_SYMBOL, i=i) for i in range(1, g.n + 1)]

        if g.n > bound:
            if exhaustive:
                raise ScaleRefusal('enumerate_efficient_dominating_sets', f'n <= {bound}', f'n = {g.n}')
            self.__logger.warning(f'P_{g.n}: efficient dominating sets checked on the blocks B^(i) only')
            all_blocks = all(is_efficient_dominating_set(g, b.members) for b in blocks)
            suite.check('blocks_are_efficient_dominating_sets', 'is_efficient_dominating_set', True, all_blocks,
                        mode=STRUCTURAL)
            suite.results['n'] = g.n
            return suite.to_dict()

        codes = enumerate_efficient_dominating_sets(g, deep=deep, logger=self.__logger)
        suite.check('count', 'enumerate_efficient_dominating_sets', expected.eds_count, len(codes))
        suite.check('sizes', 'enumerate_efficient_dominating_sets', [full_size] * len(codes),
                    [len(code) for code in codes])
        suite.check('every_set_is_a_first_symbol_block', 'enumerate_efficient_dominating_sets', True,
                    all(code.label is not None for code in codes))
        suite.check('every_block_found', 'enumerate_efficient_dominating_sets', list(range(1, g.n + 1)),
                    sorted(code.label for code in codes if code.label is not None))
        if g.n <= EDS_MAX_N:
            distances = [minimum_pairwise_distance(g, code.members) for code in codes]
            suite.check('pairwise_distance_at_least_3', 'minimum_pairwise_distance', True,
                        all(d is not None and d >= 3 for d in distances))
        if g.n == 3:
            suite.check('brute_force_agreement', 'brute_force_efficient_dominating_sets',
                        [list(code.members) for code in codes],
                        [list(s) for s in sorted(brute_force_efficient_dominating_sets(g))])
        suite.results.update({
            'n': g.n,
            'count': len(codes),
            'sets': [code.to_dict(g) for code in codes]
        })
        return suite.to_dict()

    def __automorphisms_suite(self, g, deep, exhaustive):
        expected = expectation_for(g.n)
        suite = _SuiteRecorder()
        blocks = [block(g, FIRST_SYMBOL, i=i).members for i in range(1, g.n + 1)]

        if g.n > AUTOMORPHISM_MAX_N:
            if exhaustive:
                raise ScaleRefusal('compute_automorphism_group', f'n <= {AUTOMORPHISM_MAX_N}', f'n = {g.n}')
            self.__logger.warning(f'P_{g.n}: automorphism group not searched, left translations checked only')
            translations = [left_translation(g.n, r, g) for r in GeneratorSet(g.n)]
            suite.check('left_translations_are_automorphisms', 'left_translation', True,
                        all(is_automorphism(g, m) for m in translations), mode=STRUCTURAL)
            suite.check('left_translations_permute_blocks', 'left_translation', True,
                        all({frozenset(int(m[v]) for v in b) for b in blocks} == set(blocks) for m in translations),
                        mode=STRUCTURAL)
            return suite.to_dict()

        aut = compute_automorphism_group(g, logger=self.__logger)
        grr = certify_grr(g, aut, logger=self.__logger)
        suite.check('generators_are_automorphisms', 'verify_generators', True, verify_generators(g, aut))
        suite.check('order', 'compute_automorphism_group', expected.aut_order, aut.order)
        suite.check('order_divisible_by_n_factorial', 'compute_automorphism_group', 0, aut.order % g.vertex_count)
        suite.check('grr', 'certify_grr', expected.grr, grr.result)
        suite.check('regular', 'compute_automorphism_group', expected.grr, aut.regular)
        suite.check('edge_orbits', 'edge_orbits', expected.edge_orbits, aut.edge_orbit_count)
        suite.check('permutes_dominating_sets', 'permutes_dominating_sets', True,
                    permutes_dominating_sets(g, aut, blocks)['result'])

        low, high = STABILIZER_RANGE
        if low <= g.n <= high:
            stabilizer = generating_set_stabilizer(g.n)
            suite.check('generating_set_stabilizer_size', 'generating_set_stabilizer', expected.stabilizer_size,
                        len(stabilizer))
            suite.check('order_is_n_factorial_times_stabilizer', 'generating_set_stabilizer', aut.order,
                        g.vertex_count * len(stabilizer))
            suite.results['generating_set_stabilizer'] = stabilizer.to_dict()
            if g.n == 4:
                reconstruction = semidirect_reconstruction(g, aut, stabilizer)
                suite.check('semidirect_reconstruction', 'semidirect_reconstruction', True,
                            reconstruction['equals_automorphism_group'])
                suite.results['semidirect_reconstruction'] = reconstruction

        suite.results.update({
            'n': g.n,
            'order': aut.order,
            'regular': aut.regular,
            'grr': grr.to_dict(),
            'edge_orbits': aut.edge_orbit_count,
            'edge_transitive': is_edge_transitive(aut),
            'generators': [m.tolist() for m in aut.generators]
        })
        return suite.to_dict()

    def __structure_suite(self, g, deep, exhaustive):
        suite = _SuiteRecorder()
        copy_structure = verify_copy_structure(g.n, g)
        suite.check('copy_structure', 'verify_copy_structure', True, copy_structure['result'])
        suite.check('block_sizes', 'block_sizes_consistent', True, block_sizes_consistent(g))
        suite.check('handshake', 'build_pancake', 2 * g.edge_count,
                    int(sum(len(set(row)) for row in g.adjacency_lists())))
        suite.check('rank_unrank', 'perm_rank', True,
                    bool(np.array_equal(rank_rows(g.labels), np.arange(g.vertex_count))))
        suite.check('reversals_are_involutions', 'prefix_reversal', True,
                    all(compose(r, r) == identity(g.n) for r in GeneratorSet(g.n)))
        suite.results['copy_structure'] = copy_structure
        return suite.to_dict()

    def __neighborhood_suite(self, g, deep, exhaustive):
        expected = expectation_for(g.n)
        suite = _SuiteRecorder()
        determinations = [neighborhood_determination(g, i) for i in range(1, g.n + 1)]
        suite.check('solution_counts', 'neighborhood_determination', [expected.neighborhood_solutions] * g.n,
                    [len(d.solutions) for d in determinations])
        suite.check('last_symbol_block_is_a_solution', 'neighborhood_determination', True,
                    all(d.expected in d.solutions for d in determinations))
        if g.n == 3:
            suite.check('brute_force_agreement', 'brute_force_neighborhood_determination', True,
                        all([list(s) for s in d.solutions] ==
                            [list(s) for s in brute_force_neighborhood_determination(g, d.i)]
                            for d in determinations))

        candidates = []
        for candidate in candidate_sets_for(g.n):
            members = {g.vertex_id(Permutation(p)) for p in candidate.members}
            target = set(block(g, FIRST_SYMBOL, i=candidate.i).members)
            actual = neighborhood(g, members)
            satisfies = actual == target
            suite.check(f'candidate_set_i{candidate.i}', 'neighborhood', candidate.satisfies, satisfies)
            entry = {
                'i': candidate.i,
                'members': [list(p) for p in candidate.members],
                'satisfies': satisfies,
                'among_solutions': tuple(sorted(members)) in determinations[candidate.i - 1].solutions
            }
            if not satisfies:
                entry['neighborhood'] = sorted(g.label(v).to_json() for v in actual)
            candidates.append(entry)

        suite.results['determinations'] = [d.to_dict(g) for d in determinations]
        suite.results['candidate_sets'] = candidates
        return suite.to_dict()

    @staticmethod
    def get_hash(dictionary):
        dict_string = json.dumps(dictionary, sort_keys=True)
        hash_object = hashlib.md5(dict_string.encode())
        return hash_object.hexdigest()
