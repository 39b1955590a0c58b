/**
 * SVG rendering of figure models through echarts' server-side renderer.
 * Animation is disabled and no DOM is involved, so identical models give
 * identical SVG payloads.
 */

import { LineChart } from 'echarts/charts';
import {
    GridComponent,
    LegendComponent,
    MarkLineComponent,
    TitleComponent,
} from 'echarts/components';
import * as echarts from 'echarts/core';
import { SVGRenderer } from 'echarts/renderers';

import { FigureModel } from './model.js';

echarts.use([
    SVGRenderer,
    LineChart,
    GridComponent,
    LegendComponent,
    MarkLineComponent,
    TitleComponent,
]);

export interface RenderOptions {
    width?: number;
    height?: number;
}

type ChartOption = Parameters<echarts.EChartsType['setOption']>[0];

function buildOption(model: FigureModel): ChartOption {
    const n = model.panels.length;
    const gapPct = 6;
    const usable = 100 - gapPct * (n + 1);
    const panelWidth = usable / n;

    const grid: object[] = [];
    const xAxis: object[] = [];
    const yAxis: object[] = [];
    const title: object[] = [];
    const series: object[] = [];

    model.panels.forEach((panel, i) => {
        const left = gapPct + i * (panelWidth + gapPct);
        grid.push({ left: `${left}%`, width: `${panelWidth}%`, top: 60, bottom: 50 });
        title.push({ text: panel.title, left: `${left + panelWidth / 2}%`, top: 24, textAlign: 'center', textStyle: { fontSize: 13 } });
        xAxis.push({ gridIndex: i, type: 'value', name: model.xLabel, nameLocation: 'middle', nameGap: 28 });
        yAxis.push({ gridIndex: i, type: 'value', name: i === 0 ? model.yLabel : '' });
        panel.series.forEach((s, j) => {
            const entry: Record<string, unknown> = {
                name: s.name,
                type: 'line',
                xAxisIndex: i,
                yAxisIndex: i,
                showSymbol: false,
                data: s.points,
            };
            if (j === 0 && panel.refLine !== undefined) {
                entry.markLine = {
                    silent: true,
                    symbol: 'none',
                    lineStyle: { type: 'dashed', color: '#555' },
                    label: { formatter: String(panel.refLine) },
                    data: [{ yAxis: panel.refLine }],
                };
            }
            series.push(entry);
        });
    });

    return {
        animation: false,
        legend: { top: 0, type: 'scroll' },
        grid,
        xAxis,
        yAxis,
        title,
        series,
    };
}

export function renderFigureSvg(model: FigureModel, options: RenderOptions = {}): string {
    const chart = echarts.init(null, null, {
        renderer: 'svg',
        ssr: true,
        width: options.width ?? 1280,
        height: options.height ?? 440,
    });
    try {
        chart.setOption(buildOption(model));
        return chart.renderToSVGString();
    } finally {
        chart.dispose();
    }
}
