"""Runs verification suites, sequentially or on a pool of worker processes."""

import json
import multiprocessing
import os
import time

from projquant.logger import get_logger
from projquant.verification import checks
from projquant.verification import suite
from projquant.verification import suites  # noqa: F401  (registers the suites)

logger = get_logger(__name__)


def _get_num_workers():
    num_cpus = int(os.environ.get('NB_CPU', '1'))
    return num_cpus if num_cpus > 1 else 0  # Run the sequential path if only 1 CPU is available.


def _run_suite(name, options):
    """Runs one suite and returns its reports in JSON form."""
    suite_cls = suite.get_suite_class(name)
    start = time.time()
    reports = suite_cls(options).run()
    logger.info('Suite %s (n=%d) finished with %d report(s) in %.1f seconds',
                name, options['n'], len(reports), time.time() - start)
    return [checks.report_to_json(report, options['seed']) for report in reports]


def _run_suite_on_worker(name, options):
    try:
        return _run_suite(name, options)
    except Exception as e:
        worker_name = multiprocessing.current_process().name
        raise RuntimeError(
            "An exception occurred when running suite '%s' in worker process %s (see above)"
            % (name, worker_name)) from e


def run_suites(options, num_workers=None):
    """Runs the suites named in options['suites'] for each dimension in options['n'].

    options['n'] may be an integer or a list of integers. Reports are
    returned in the order of the dimensions, then of the suite names, so the
    output does not depend on the number of workers.
    """
    if num_workers is None:
        num_workers = _get_num_workers()
    dimensions = options['n'] if isinstance(options['n'], (list, tuple)) else [options['n']]
    jobs = []
    for n in dimensions:
        job_options = dict(options, n=n)
        for name in options['suites']:
            suite.get_suite_class(name)
            jobs.append((name, job_options))

    if num_workers == 0:
        logger.info('Running %d suite job(s) sequentially', len(jobs))
        results = [_run_suite(name, job_options) for name, job_options in jobs]
    else:
        logger.info('Running %d suite job(s) using %d worker(s)', len(jobs), num_workers)
        with multiprocessing.Pool(processes=num_workers) as pool:
            handles = [pool.apply_async(_run_suite_on_worker, args=(name, job_options))
                       for name, job_options in jobs]
            results = [handle.get() for handle in handles]

    reports = []
    for result in results:
        reports.extend(result)
    return reports


def all_passed(reports):
    return all(report['passed'] for report in reports)


def reports_to_json(reports):
    return json.dumps(reports, indent=2, sort_keys=True)
