#!/usr/bin/env node
/**
 * render_figures <csv> --kind <qber|skr> [--beta <rad>] --out <path.svg>
 *
 * Exit codes: 0 success, 2 usage error, 3 schema error, 4 data error.
 */

import * as fs from 'node:fs';
import { fileURLToPath } from 'node:url';

import { DataError, SchemaError, parseSweepCsv } from './csv.js';
import { FigureKind, buildFigure } from './model.js';
import { renderFigureSvg } from './render.js';

const USAGE = 'usage: render_figures <csv> --kind <qber|skr> [--beta <rad>] --out <path.svg>';

interface CliArgs {
    csvPath: string;
    kind: FigureKind;
    beta?: number;
    outPath: string;
}

class UsageError extends Error {}

function parseArgs(argv: string[]): CliArgs {
    let csvPath: string | undefined;
    let kind: string | undefined;
    let beta: number | undefined;
    let outPath: string | undefined;

    for (let i = 0; i < argv.length; i++) {
        const arg = argv[i];
        const next = () => {
            i += 1;
            if (i >= argv.length) {
                throw new UsageError(`missing value for ${arg}`);
            }
            return argv[i];
        };
        if (arg === '--kind') {
            kind = next();
        } else if (arg === '--beta') {
            const raw = next();
            beta = Number(raw);
            if (!Number.isFinite(beta)) {
                throw new UsageError(`--beta expects a number in radians, got '${raw}'`);
            }
        } else if (arg === '--out') {
            outPath = next();
        } else if (arg === '--help' || arg === '-h') {
            throw new UsageError(USAGE);
        } else if (arg.startsWith('-')) {
            throw new UsageError(`unknown flag ${arg}`);
        } else if (csvPath === undefined) {
            csvPath = arg;
        } else {
            throw new UsageError(`unexpected argument ${arg}`);
        }
    }

    if (csvPath === undefined || outPath === undefined) {
        throw new UsageError(USAGE);
    }
    if (kind !== 'qber' && kind !== 'skr') {
        throw new UsageError(`--kind must be 'qber' or 'skr', got '${kind ?? ''}'`);
    }
    if (!outPath.endsWith('.svg')) {
        throw new UsageError('only vector output is supported; --out must end in .svg');
    }
    return { csvPath, kind, beta, outPath };
}

export function runCli(argv: string[]): number {
    let args: CliArgs;
    try {
        args = parseArgs(argv);
    } catch (err) {
        console.error((err as Error).message);
        return 2;
    }
    try {
        const text = fs.readFileSync(args.csvPath, 'utf-8');
        const rows = parseSweepCsv(text);
        const model = buildFigure(rows, args.kind, args.beta);
        fs.writeFileSync(args.outPath, renderFigureSvg(model), 'utf-8');
        console.log(
            `wrote ${args.outPath}: ${model.panels.length} panel(s), ` +
                `${model.panels.reduce((acc, p) => acc + p.series.length, 0)} curve(s)`,
        );
        return 0;
    } catch (err) {
        if (err instanceof SchemaError) {
            console.error(`schema error: ${err.message}`);
            return 3;
        }
        if (err instanceof DataError) {
            console.error(`data error: ${err.message}`);
            return 4;
        }
        if (err instanceof Error && 'code' in err && err.code === 'ENOENT') {
            console.error(`cannot read input: ${err.message}`);
            return 2;
        }
        throw err;
    }
}

// Invoked as a bin script (not imported by tests): run and exit. The
// realpath comparison also recognizes the npm bin symlink.
function invokedDirectly(): boolean {
    if (process.argv[1] === undefined) {
        return false;
    }
    try {
        return fs.realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
    } catch {
        return false;
    }
}

if (invokedDirectly()) {
    process.exit(runCli(process.argv.slice(2)));
}
