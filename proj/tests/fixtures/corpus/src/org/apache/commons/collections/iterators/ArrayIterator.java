package org.apache.commons.collections.iterators;

public class ArrayIterator {

    protected int index;

    protected Object array;

    public ArrayIterator(final Object array) {
        this.array = array;
    }

    /**
     * Returns true if there are more elements to return from the array.
     *
     * @return true if there is a next element to return
     */
    public boolean hasNext() {
        return index < 10;
    }
}
