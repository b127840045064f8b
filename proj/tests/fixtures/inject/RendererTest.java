package org.jfree.chart.renderer;

import static org.junit.Assert.assertTrue;

import org.junit.Test;

public class RendererTest {

    @Test
    public void testSeriesGenerator() {
        AbstractCategoryItemRenderer r = new AbstractCategoryItemRenderer();
        CategoryItemLabelGenerator g = null;
        int s = 2;
        r.setSeriesItemLabelGenerator(s, g);
        assertTrue(r.getSeriesItemLabelGenerator(s) == null);
    }

    @Test
    public void testOverloads() {
        AbstractCategoryItemRenderer r = new AbstractCategoryItemRenderer();
        r.setSeriesItemLabelGenerator(0, null, false);
        r.setSeriesItemLabelGenerator(1 + 1, null);
    }
}
