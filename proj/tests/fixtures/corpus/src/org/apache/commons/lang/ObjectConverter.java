package org.apache.commons.lang;

import java.util.Collection;

public class ObjectConverter {

    /**
     * Converts an object to its string form.
     *
     * @param object  the object to convert, must not be null
     * @return the converted string, never null
     */
    public String convert(Object object) {
        return object.toString();
    }

    /**
     * Checks whether a string is empty.
     *
     * @param str  the string to check, may be null
     * @return <code>true</code> if the string is null or empty
     */
    public static boolean isEmpty(String str) {
        return str == null || str.length() == 0;
    }

    /**
     * Returns the length of a string.
     *
     * @param str  the string, may be null
     * @return the length, or 0 if the string is null
     */
    public static int length(String str) {
        return str == null ? 0 : str.length();
    }

    /**
     * Copies every element of the collection.
     *
     * @param coll  the collection to copy
     * @throws NullPointerException if any element of the collection is null
     * @throws IllegalArgumentException if the collection is empty
     */
    public static void copyAll(Collection<Object> coll) {
    }

    /**
     * Compares a value against the natural order.
     *
     * @param value  the value to compare
     * @throws ClassCastException if the value is not a Comparable
     */
    public static void checkComparable(Object value) {
    }

    /**
     * Sums two numbers.
     *
     * @param a  the first number
     * @param b  the second number
     * @return the sum of a and b
     */
    public static int sum(int a, int b) {
        return a + b;
    }

    /**
     * Returns the name.
     *
     * @param name  the name, must not be empty
     * @throws IllegalArgumentException if name is empty
     */
    public static void requireName(String name) {
    }
}
