"""Command implementations behind the bpskit CLI."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from bpskit.diagnostics import DriftVerificationService, classify_regime
from bpskit.estimators import (
    TestFunction,
    compose,
    jump_chain_weights,
    parse_test_function,
    pooled_path_average,
)
from bpskit.exceptions import ConfigurationError, TrajectoryFormatError
from bpskit.logging import LoggingService
from bpskit.sampler import (
    BouncyParticleSampler,
    ConstantRefresh,
    PositionDependentRefresh,
    Trajectory,
    chain_generator,
    derived_seed,
)
from bpskit.targets import Target, TargetConfig, build_target
from bpskit.transform import (
    IsotropicTransform,
    TransformCheckReport,
    TransformConfig,
    TransformedTarget,
    build_transform,
    run_transform_checks,
)

from .run_models import (
    ChainRecord,
    DiagnoseConfig,
    DiagnoseResult,
    EstimateRunReport,
    FunctionEstimate,
    RunConfig,
    RunManifest,
    TrajectoryHeader,
    TransformCheckConfig,
)
from .trajectory_store import MANIFEST_FILE, TrajectoryStore, chain_path

# Error messages
ERROR_NO_PATHS = "No trajectory files given"
ERROR_MIXED_RUNS = "Trajectory {path} was produced by a different configuration than {first}"
ERROR_MANIFEST_CHAINS = "Run directory {path} lists chains {listed} in its manifest but holds {present}"
ERROR_MANIFEST_CONFIG = "Trajectory {path} does not match the configuration in its run manifest"


def build_sampling_target(
    target_config: TargetConfig, transform_config: TransformConfig | None
) -> tuple[Target, IsotropicTransform | None]:
    """Target the sampler runs on: the base target, or its pullback under a transform."""
    base = build_target(target_config)
    if transform_config is None:
        return base, None
    transform = build_transform(transform_config, beta=target_config.parameters.beta)
    return TransformedTarget(base, transform), transform


def _sample_chain(
    config: RunConfig, chain: int, logger: LoggingService | None = None
) -> ChainRecord:
    """Simulate and persist one chain. Runs in a worker process when threads > 1."""
    log = logger or LoggingService()
    target, transform = build_sampling_target(config.target, config.transform)
    sampler = BouncyParticleSampler(log, target, config.policy)
    rng = chain_generator(config.seed, chain)

    x0 = None
    if config.initial_position is not None:
        x0 = np.asarray(config.initial_position, dtype=float)
        if transform is not None:
            x0 = transform.invert(x0)
    init = sampler.initial_state(rng, x0)
    trajectory = sampler.simulate(init, config.horizon, rng, seed=config.seed, chain=chain)

    seed = derived_seed(config.seed, chain)
    header = TrajectoryHeader(
        target=config.target,
        policy=config.policy,
        transform=config.transform,
        coordinates="x" if transform is None else "y",
        seed=config.seed,
        chain=chain,
        derived_seed=seed,
        d=config.target.dimension,
    )
    path = TrajectoryStore(log).write(chain_path(config.output_dir, chain), header, trajectory)
    return ChainRecord(
        chain=chain,
        derived_seed=seed,
        path=str(path),
        events=len(trajectory),
        duration=trajectory.duration,
    )


def cmd_sample(config: RunConfig, logger: LoggingService) -> RunManifest:
    """Run every chain of a sampling run and write trajectories plus manifest.

    Chains are independent; with threads > 1 they run in a process pool and
    each worker writes its own file.
    """
    started = time.perf_counter()
    chains = range(config.chains)
    logger.info(
        "Sampling started",
        family=config.target.family,
        dimension=config.target.dimension,
        chains=config.chains,
        threads=config.threads,
        seed=config.seed,
    )
    if config.threads > 1 and config.chains > 1:
        with ProcessPoolExecutor(max_workers=min(config.threads, config.chains)) as pool:
            records = list(pool.map(_sample_chain, [config] * config.chains, chains))
    else:
        records = [_sample_chain(config, chain, logger) for chain in chains]

    manifest = RunManifest(
        config_hash=config.config_hash(),
        seed=config.seed,
        config=config,
        chains=records,
    )
    TrajectoryStore(logger).write_manifest(config.output_dir, manifest)
    logger.info(
        "Sampling complete",
        chains=len(records),
        events=sum(r.events for r in records),
        elapsed_ms=round((time.perf_counter() - started) * 1000, 2),
    )
    return manifest


def _pooled_jump_chain(
    trajectories: list[Trajectory],
    g: TestFunction,
    target: Target,
    policy: ConstantRefresh | PositionDependentRefresh,
) -> float:
    numerator = denominator = 0.0
    for trajectory in trajectories:
        xs, vs, weights = jump_chain_weights(trajectory, target, policy)
        numerator += float(np.sum(weights * g.evaluate(xs, vs)))
        denominator += float(np.sum(weights))
    return numerator / denominator


def _check_against_manifests(
    store: TrajectoryStore,
    paths: list[Path],
    headers: dict[Path, TrajectoryHeader],
) -> None:
    """Require run directories with a manifest to hold exactly the chains it lists."""
    for directory in paths:
        if not (directory / MANIFEST_FILE).is_file():
            continue
        manifest = store.read_manifest(directory)
        listed = sorted(Path(record.path).name for record in manifest.chains)
        present = sorted(path.name for path in headers if path.parent == directory)
        if listed != present:
            msg = ERROR_MANIFEST_CHAINS.format(path=directory, listed=listed, present=present)
            raise TrajectoryFormatError(msg, "cmd_estimate", str(directory))
        config = manifest.config
        for path, header in headers.items():
            if path.parent != directory:
                continue
            if (header.seed, header.target, header.policy, header.transform) != (
                manifest.seed,
                config.target,
                config.policy,
                config.transform,
            ):
                msg = ERROR_MANIFEST_CONFIG.format(path=path)
                raise TrajectoryFormatError(msg, "cmd_estimate", str(path))


def cmd_estimate(
    paths: list[Path], expressions: list[str], logger: LoggingService
) -> EstimateRunReport:
    """Pooled path and jump-chain estimates of each test function.

    Trajectories sampled in transformed coordinates are mapped back through
    the transform before g is applied.

    Raises:
        ConfigurationError: If no files are given or they come from different runs
        TrajectoryFormatError: If a run directory disagrees with its manifest
    """
    store = TrajectoryStore(logger)
    files = store.expand_paths(paths)
    if not files:
        raise ConfigurationError(ERROR_NO_PATHS, "cmd_estimate")

    loaded = [store.read(path) for path in files]
    _check_against_manifests(
        store,
        [path for path in paths if path.is_dir()],
        {path: header for path, (header, _) in zip(files, loaded, strict=True)},
    )
    first_header = loaded[0][0]
    for path, (header, _) in zip(files[1:], loaded[1:], strict=True):
        if header.run_signature() != first_header.run_signature():
            msg = ERROR_MIXED_RUNS.format(path=path, first=files[0])
            raise ConfigurationError(msg, "cmd_estimate", path=str(path))

    trajectories = [trajectory for _, trajectory in loaded]
    target, transform = build_sampling_target(first_header.target, first_header.transform)
    estimates: list[FunctionEstimate] = []
    for expr in expressions:
        g = parse_test_function(expr, first_header.d)
        label = g.label
        if transform is not None:
            g = compose(g, transform.apply_many, label)
        report = pooled_path_average(
            trajectories, g, force_quadrature=transform is not None
        )
        jump = _pooled_jump_chain(trajectories, g, target, first_header.policy)
        estimates.append(FunctionEstimate(function=label, path=report, jump_chain=jump))
        logger.debug("Estimated", function=label, estimate=report.estimate, ess=report.ess)

    return EstimateRunReport(
        chains=len(trajectories),
        duration=sum(t.duration for t in trajectories),
        estimates=estimates,
    )


def cmd_diagnose(config: DiagnoseConfig, logger: LoggingService) -> DiagnoseResult:
    """Drift verification on the sampled target plus tail-regime advice for the base target."""
    target, _ = build_sampling_target(config.target, config.transform)
    drift = DriftVerificationService(logger).verify(target, config.policy, config.grid)
    regime = classify_regime(build_target(config.target))
    logger.info("Regime classified", family=config.target.family, regime=regime.regime)
    return DiagnoseResult(drift=drift, regime=regime)


def cmd_transform_check(
    config: TransformCheckConfig, logger: LoggingService
) -> TransformCheckReport:
    """Self-checks of a transform applied to a target."""
    base = build_target(config.target)
    transform = build_transform(config.transform, beta=config.target.parameters.beta)
    report = run_transform_checks(base, transform, chain_generator(config.seed), config.points)
    log = logger.info if report.passed else logger.warning
    log(
        "Transform checked",
        transform=report.transform,
        passed=report.passed,
        gradient_error=report.gradient_error,
        round_trip_error=report.round_trip_error,
    )
    return report
